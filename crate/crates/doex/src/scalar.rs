//! Exact scalar arithmetic over the base fields used by the library:
//! arbitrary-precision rationals, quadratic extensions `Q(a)` with `a`
//! satisfying a monic degree-2 minimal polynomial, and prime fields `GF(q)`.
//!
//! Representations are canonical, so equality is structural: rationals are
//! reduced with positive denominator, quadratic elements are stored as
//! `c0 + c1*a` with `a^2` eliminated through the minimal polynomial, and
//! prime-field elements are residues in `[0, q)`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// Largest supported prime modulus. Finite fields are only needed by the
/// enumeration layer, which never goes past small primes.
pub const MAX_PRIME: u64 = 257;

/// Minimal polynomial `a^2 + u*a + v = 0` of the generator of a quadratic
/// extension of the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMinPoly {
    pub u: BigRational,
    pub v: BigRational,
}

/// A base field: `Q`, a quadratic extension `Q(a)`, or a prime field `GF(q)`.
#[derive(Clone, Debug)]
pub enum FieldSpec {
    Rationals,
    Quadratic(Arc<QuadMinPoly>),
    PrimeField(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields: {0}")]
    MixedFields(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not contained in the field {1}")]
    NotInField(String, String),
    #[error("minimal polynomial {0} is reducible over the rationals")]
    ReduciblePoly(String),
    #[error("modulus {0} is not a prime in the supported range 2..={MAX_PRIME}")]
    BadModulus(u64),
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// True iff the rational is a square of a rational.
fn is_rational_square(x: &BigRational) -> bool {
    !x.is_negative()
        && is_perfect_square(x.numer()).is_some()
        && is_perfect_square(x.denom()).is_some()
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// The field `Q(a)` with `a^2 + u*a + v = 0`. The polynomial must be
    /// irreducible over `Q`, i.e. its discriminant must not be a rational
    /// square.
    pub fn quadratic(u: BigRational, v: BigRational) -> Result<FieldSpec, ScalarError> {
        let disc = &u * &u - big(4) * &v;
        if is_rational_square(&disc) {
            return Err(ScalarError::ReduciblePoly(minpoly_string(&u, &v)));
        }
        Ok(FieldSpec::Quadratic(Arc::new(QuadMinPoly { u, v })))
    }

    pub fn prime_field(q: u64) -> Result<FieldSpec, ScalarError> {
        if q > MAX_PRIME || !is_prime(q) {
            return Err(ScalarError::BadModulus(q));
        }
        Ok(FieldSpec::PrimeField(q))
    }

    /// `Q(a^2+1)`, the field containing a square root of -1.
    pub fn gaussian() -> FieldSpec {
        FieldSpec::quadratic(big(0), big(1)).unwrap()
    }

    /// `Q(a^2+a+1)`, the field containing a primitive cube root of unity.
    pub fn eisenstein() -> FieldSpec {
        FieldSpec::quadratic(big(1), big(1)).unwrap()
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(big(n)),
            FieldSpec::Quadratic(min) => Scalar::Quad {
                c0: big(n),
                c1: BigRational::zero(),
                min: min.clone(),
            },
            FieldSpec::PrimeField(q) => Scalar::Fp {
                val: (n.rem_euclid(*q as i64)) as u64,
                q: *q,
            },
        }
    }

    pub fn from_ratio(&self, numer: i64, denom: i64) -> Scalar {
        assert!(denom != 0, "zero denominator");
        let r = BigRational::new(BigInt::from(numer), BigInt::from(denom));
        self.promote(Scalar::Rat(r))
            .expect("rational not embeddable in field")
    }

    /// The extension generator `a` (only defined for quadratic fields).
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            FieldSpec::Quadratic(min) => Some(Scalar::Quad {
                c0: BigRational::zero(),
                c1: BigRational::one(),
                min: min.clone(),
            }),
            _ => None,
        }
    }

    /// Re-expresses `s` as an element of this field. Rationals embed into
    /// every field (into `GF(q)` only when the denominator is prime to `q`);
    /// anything else must already live in the field.
    pub fn promote(&self, s: Scalar) -> Result<Scalar, ScalarError> {
        match (self, s) {
            (FieldSpec::Rationals, s @ Scalar::Rat(_)) => Ok(s),
            (FieldSpec::Quadratic(min), Scalar::Rat(r)) => Ok(Scalar::Quad {
                c0: r,
                c1: BigRational::zero(),
                min: min.clone(),
            }),
            (FieldSpec::Quadratic(min), s @ Scalar::Quad { .. }) => {
                let ok = matches!(&s, Scalar::Quad { min: m, .. } if m.as_ref() == min.as_ref());
                if ok {
                    Ok(s)
                } else {
                    Err(ScalarError::NotInField(s.to_string(), self.to_string()))
                }
            }
            (FieldSpec::PrimeField(q), Scalar::Rat(r)) => rat_mod_q(&r, *q)
                .ok_or_else(|| ScalarError::NotInField(r.to_string(), self.to_string())),
            (FieldSpec::PrimeField(q), s @ Scalar::Fp { .. }) => {
                let ok = matches!(&s, Scalar::Fp { q: qq, .. } if qq == q);
                if ok {
                    Ok(s)
                } else {
                    Err(ScalarError::NotInField(s.to_string(), self.to_string()))
                }
            }
            (f, s) => Err(ScalarError::NotInField(s.to_string(), f.to_string())),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        self.promote(s.clone()).is_ok()
    }

    /// Parses `Q`, `Q(a^2+1)`, `Q(a^2+a+1)`, `Q(a^2-2)`, `GF(11)`, ...
    pub fn parse(text: &str) -> Result<FieldSpec, ScalarError> {
        let t = text.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
            let q: u64 = inner
                .trim()
                .parse()
                .map_err(|_| ScalarError::Parse(format!("bad modulus `{inner}`")))?;
            return FieldSpec::prime_field(q);
        }
        if let Some(inner) = t.strip_prefix("Q(").and_then(|s| s.strip_suffix(')')) {
            let (u, v) = parse_minpoly(inner)?;
            return FieldSpec::quadratic(u, v);
        }
        Err(ScalarError::Parse(format!("unrecognized field spec `{t}`")))
    }

    /// Parses a scalar literal in the context of this field.
    ///
    /// Accepted forms: `3`, `-3/4` (all fields), `2+5a`, `-a`, `1/2a`
    /// (quadratic fields), `7 mod 11` or a bare residue (prime fields).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(ScalarError::Parse("empty scalar".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(parse_rational(&t)?)),
            FieldSpec::Quadratic(min) => {
                let (c0, c1) = parse_quad_parts(&t)?;
                Ok(Scalar::Quad {
                    c0,
                    c1,
                    min: min.clone(),
                })
            }
            FieldSpec::PrimeField(q) => {
                let body = match t.split_once("mod") {
                    Some((v, m)) => {
                        let m: u64 = m
                            .parse()
                            .map_err(|_| ScalarError::Parse(format!("bad modulus in `{t}`")))?;
                        if m != *q {
                            return Err(ScalarError::Parse(format!(
                                "modulus {m} does not match field GF({q})"
                            )));
                        }
                        v.to_string()
                    }
                    None => t,
                };
                let r = parse_rational(&body)?;
                rat_mod_q(&r, *q)
                    .ok_or_else(|| ScalarError::NotInField(body.clone(), self.to_string()))
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// A uniformly random scalar with small entries, for property tests and
    /// the randomized vector checks of the diagnostics layer.
    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(random_rational(rng)),
            FieldSpec::Quadratic(min) => Scalar::Quad {
                c0: random_rational(rng),
                c1: random_rational(rng),
                min: min.clone(),
            },
            FieldSpec::PrimeField(q) => Scalar::Fp {
                val: rng.gen_range(0..*q),
                q: *q,
            },
        }
    }
}

fn random_rational<R: rand::Rng>(rng: &mut R) -> BigRational {
    let n = rng.gen_range(-9i64..=9);
    let d = rng.gen_range(1i64..=4);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_mod_q(r: &BigRational, q: u64) -> Option<Scalar> {
    let qb = BigInt::from(q);
    let den = r.denom() % &qb;
    if den.is_zero() {
        return None;
    }
    let num = ((r.numer() % &qb) + &qb) % &qb;
    let den = ((den + &qb) % &qb).to_u64_digits().1;
    let den = if den.is_empty() { 0 } else { den[0] };
    let num = num.to_u64_digits().1;
    let num = if num.is_empty() { 0 } else { num[0] };
    Some(Scalar::Fp {
        val: mul_mod(num, inv_mod(den, q)?, q),
        q,
    })
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    (a * b) % q
}

fn inv_mod(a: u64, q: u64) -> Option<u64> {
    if a % q == 0 {
        return None;
    }
    // extended Euclid on i64; q <= MAX_PRIME so nothing overflows
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (q as i64, (a % q) as i64);
    while new_r != 0 {
        let quo = r / new_r;
        (t, new_t) = (new_t, t - quo * new_t);
        (r, new_r) = (new_r, r - quo * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(q as i64) as u64)
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldSpec::Rationals, FieldSpec::Rationals) => true,
            (FieldSpec::Quadratic(a), FieldSpec::Quadratic(b)) => a.as_ref() == b.as_ref(),
            (FieldSpec::PrimeField(a), FieldSpec::PrimeField(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FieldSpec {}

fn minpoly_string(u: &BigRational, v: &BigRational) -> String {
    let mut s = String::from("a^2");
    if !u.is_zero() {
        if u.is_negative() {
            s.push('-');
        } else {
            s.push('+');
        }
        let au = u.abs();
        if !au.is_one() {
            s.push_str(&au.to_string());
        }
        s.push('a');
    }
    if !v.is_zero() {
        if v.is_negative() {
            s.push('-');
        } else {
            s.push('+');
        }
        s.push_str(&v.abs().to_string());
    }
    s
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Quadratic(min) => write!(f, "Q({})", minpoly_string(&min.u, &min.v)),
            FieldSpec::PrimeField(q) => write!(f, "GF({q})"),
        }
    }
}

/// An exact field element. Binary operations unify the operands first:
/// rationals embed into the other operand's field, anything else must match
/// exactly (a genuine mismatch is a programming error and panics; use the
/// `try_*` methods at input boundaries).
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Quad {
        c0: BigRational,
        c1: BigRational,
        min: Arc<QuadMinPoly>,
    },
    Fp {
        val: u64,
        q: u64,
    },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Quad { c0, c1, .. } => c0.is_zero() && c1.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Quad { c0, c1, .. } => c0.is_one() && c1.is_zero(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn rat_i64(n: i64) -> Scalar {
        Scalar::Rat(big(n))
    }

    /// The field this scalar naturally lives in (`Q` for plain rationals).
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Quad { min, .. } => FieldSpec::Quadratic(min.clone()),
            Scalar::Fp { q, .. } => FieldSpec::PrimeField(*q),
        }
    }

    fn unify(a: Scalar, b: Scalar) -> Result<(Scalar, Scalar), ScalarError> {
        match (&a, &b) {
            (Scalar::Rat(_), Scalar::Rat(_)) => Ok((a, b)),
            (Scalar::Rat(_), _) => {
                let f = b.field();
                Ok((f.promote(a)?, b))
            }
            (_, Scalar::Rat(_)) => {
                let f = a.field();
                let b = f.promote(b)?;
                Ok((a, b))
            }
            (Scalar::Quad { min: m1, .. }, Scalar::Quad { min: m2, .. }) => {
                if m1.as_ref() == m2.as_ref() {
                    Ok((a, b))
                } else {
                    Err(ScalarError::MixedFields(format!(
                        "{} vs {}",
                        a.field(),
                        b.field()
                    )))
                }
            }
            (Scalar::Fp { q: q1, .. }, Scalar::Fp { q: q2, .. }) => {
                if q1 == q2 {
                    Ok((a, b))
                } else {
                    Err(ScalarError::MixedFields(format!("GF({q1}) vs GF({q2})")))
                }
            }
            _ => Err(ScalarError::MixedFields(format!(
                "{} vs {}",
                a.field(),
                b.field()
            ))),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        // same-variant fast paths; the clone-and-unify fallback only runs
        // for genuinely mixed operands
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => return Ok(Scalar::Rat(x + y)),
            (Scalar::Fp { val: x, q: q1 }, Scalar::Fp { val: y, q: q2 }) if q1 == q2 => {
                return Ok(Scalar::Fp {
                    val: (x + y) % q1,
                    q: *q1,
                })
            }
            (
                Scalar::Quad { c0, c1, min },
                Scalar::Quad {
                    c0: d0,
                    c1: d1,
                    min: min2,
                },
            ) if min.as_ref() == min2.as_ref() => {
                return Ok(Scalar::Quad {
                    c0: c0 + d0,
                    c1: c1 + d1,
                    min: min.clone(),
                })
            }
            _ => {}
        }
        let (a, b) = Scalar::unify(self.clone(), other.clone())?;
        a.try_add(&b)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => return Ok(Scalar::Rat(x * y)),
            (Scalar::Fp { val: x, q: q1 }, Scalar::Fp { val: y, q: q2 }) if q1 == q2 => {
                return Ok(Scalar::Fp {
                    val: mul_mod(*x, *y, *q1),
                    q: *q1,
                })
            }
            (
                Scalar::Quad { c0, c1, min },
                Scalar::Quad {
                    c0: d0,
                    c1: d1,
                    min: min2,
                },
            ) if min.as_ref() == min2.as_ref() => {
                // (c0 + c1 a)(d0 + d1 a) with a^2 = -u a - v
                let cross = c1 * d1;
                return Ok(Scalar::Quad {
                    c0: c0 * d0 - &min.v * &cross,
                    c1: c0 * d1 + c1 * d0 - &min.u * &cross,
                    min: min.clone(),
                });
            }
            _ => {}
        }
        let (a, b) = Scalar::unify(self.clone(), other.clone())?;
        a.try_mul(&b)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Quad { c0, c1, min } => Scalar::Quad {
                c0: -c0.clone(),
                c1: -c1.clone(),
                min: min.clone(),
            },
            Scalar::Fp { val, q } => Scalar::Fp {
                val: (q - val) % q,
                q: *q,
            },
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Quad { c0, c1, min } => {
                // (c0 + c1 a)^-1 = (c0 - u c1 - c1 a) / N, N = c0^2 - u c0 c1 + v c1^2
                let n = c0 * c0 - &min.u * c0 * c1 + &min.v * c1 * c1;
                Scalar::Quad {
                    c0: (c0 - &min.u * c1) / &n,
                    c1: -c1.clone() / &n,
                    min: min.clone(),
                }
            }
            Scalar::Fp { val, q } => Scalar::Fp {
                val: inv_mod(*val, *q).ok_or(ScalarError::DivisionByZero)?,
                q: *q,
            },
        })
    }

    pub fn try_eq(&self, other: &Scalar) -> Result<bool, ScalarError> {
        let (a, b) = Scalar::unify(self.clone(), other.clone())?;
        Ok(match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => x == y,
            (
                Scalar::Quad { c0, c1, .. },
                Scalar::Quad {
                    c0: d0, c1: d1, ..
                },
            ) => c0 == d0 && c1 == d1,
            (Scalar::Fp { val: x, .. }, Scalar::Fp { val: y, .. }) => x == y,
            _ => unreachable!(),
        })
    }

    /// Renders the scalar for use as a coefficient or matrix entry: compound
    /// quadratic values are parenthesized, prime-field values print as the
    /// bare residue (the ambient field is known from context).
    pub fn to_coeff_string(&self) -> String {
        match self {
            Scalar::Fp { val, .. } => val.to_string(),
            _ => {
                let s = self.to_string();
                // needs parens when an interior sign would split the token
                let interior_sign = s
                    .char_indices()
                    .any(|(i, c)| i > 0 && (c == '+' || c == '-'));
                if interior_sign {
                    format!("({s})")
                } else {
                    s
                }
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).unwrap_or(false)
    }
}

impl Eq for Scalar {}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$imp(rhs).expect("mixed-field scalar arithmetic")
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

fn try_sub(a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
    a.try_add(&b.neg())
}

impl Scalar {
    fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        try_sub(self, other)
    }
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad { c0, c1, .. } => {
                if c1.is_zero() {
                    return write!(f, "{c0}");
                }
                let a_part = |c: &BigRational| -> String {
                    let ac = c.abs();
                    if ac.is_one() {
                        "a".to_string()
                    } else {
                        format!("{ac}a")
                    }
                };
                if c0.is_zero() {
                    if c1.is_negative() {
                        write!(f, "-{}", a_part(c1))
                    } else {
                        write!(f, "{}", a_part(c1))
                    }
                } else if c1.is_negative() {
                    write!(f, "{c0}-{}", a_part(c1))
                } else {
                    write!(f, "{c0}+{}", a_part(c1))
                }
            }
            Scalar::Fp { val, q } => write!(f, "{val} mod {q}"),
        }
    }
}

fn parse_rational(t: &str) -> Result<BigRational, ScalarError> {
    let mk_err = || ScalarError::Parse(format!("bad rational `{t}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| mk_err())?;
        let d: BigInt = d.parse().map_err(|_| mk_err())?;
        if d.is_zero() {
            return Err(mk_err());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| mk_err())?;
        Ok(BigRational::from_integer(n))
    }
}

/// Splits a sum of signed terms like `2+5a`, `-a`, `1/2a`, `a+1`, `3` into
/// the pair (c0, c1) with the value c0 + c1*a.
fn parse_quad_parts(t: &str) -> Result<(BigRational, BigRational), ScalarError> {
    let t = t.replace('*', "");
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
            if ch == '-' {
                cur.push('-');
            }
        } else if !(ch == '+' && i == 0) {
            cur.push(ch);
        }
    }
    terms.push(cur);
    let mut c0 = BigRational::zero();
    let mut c1 = BigRational::zero();
    for term in terms {
        if let Some(coeff) = term.strip_suffix('a') {
            c1 += match coeff {
                "" => BigRational::one(),
                "-" => -BigRational::one(),
                s => parse_rational(s)?,
            };
        } else if term.contains('a') {
            return Err(ScalarError::Parse(format!(
                "the extension generator must be a trailing factor in `{term}`"
            )));
        } else {
            c0 += parse_rational(&term)?;
        }
    }
    Ok((c0, c1))
}

fn parse_minpoly(inner: &str) -> Result<(BigRational, BigRational), ScalarError> {
    let t: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = t.strip_prefix("a^2").ok_or_else(|| {
        ScalarError::Parse(format!("minimal polynomial must start with a^2: `{t}`"))
    })?;
    if rest.is_empty() {
        return Err(ScalarError::Parse("a^2 alone is not irreducible".into()));
    }
    let (c0, c1) = parse_quad_parts(rest.strip_prefix('+').unwrap_or(rest))
        .map_err(|_| ScalarError::Parse(format!("bad minimal polynomial `{t}`")))?;
    // a^2 + c1*a + c0
    Ok((c1, c0))
}
