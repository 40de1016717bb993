//! The free algebra `k<x1, x2, y1, y2>` with all generators in degree 1:
//! words, the degree-lexicographic order, and noncommutative polynomials.
//!
//! The generator precedence is fixed as `x1 < x2 < y1 < y2`. Under deg-lex
//! this orients every mixing relation with leading word `y_i x_s` and the
//! two non-mixing relations with leading words `x2 x1` and `y2 y1`, so the
//! six relations of a double extension rewrite y-letters to the right of
//! x-letters.

use crate::scalar::{FieldSpec, Scalar, ScalarError};
use std::collections::BTreeMap;
use std::fmt;

/// A generator of the free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X1,
    X2,
    Y1,
    Y2,
}

pub const GENS: [Gen; 4] = [Gen::X1, Gen::X2, Gen::Y1, Gen::Y2];

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::X1 => 0,
            Gen::X2 => 1,
            Gen::Y1 => 2,
            Gen::Y2 => 3,
        }
    }

    pub fn from_index(i: usize) -> Gen {
        GENS[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::X1 => "x1",
            Gen::X2 => "x2",
            Gen::Y1 => "y1",
            Gen::Y2 => "y2",
        }
    }

    pub fn parse(s: &str) -> Option<Gen> {
        match s {
            "x1" => Some(Gen::X1),
            "x2" => Some(Gen::X2),
            "y1" => Some(Gen::Y1),
            "y2" => Some(Gen::Y2),
            _ => None,
        }
    }

    pub fn is_x(self) -> bool {
        matches!(self, Gen::X1 | Gen::X2)
    }
}

/// A word in the generators. Degree equals length; the derived `Ord` is
/// degree-lexicographic (compare length first, then letters left to right),
/// which is multiplicative on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Word {
        Word(vec![g])
    }

    pub fn of(gens: &[Gen]) -> Word {
        Word(gens.to_vec())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Leftmost starting index of `pat` as a factor of `self`.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.is_empty() || pat.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(pat.0.len()).position(|w| w == pat.0)
    }

    pub fn contains_factor(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Number of x-letters in the word.
    pub fn x_degree(&self) -> usize {
        self.0.iter().filter(|g| g.is_x()).count()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{}", g.name())?;
            } else {
                write!(f, "{}^{}", g.name(), run)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero scalars.
/// The map is ordered by deg-lex, so the last entry is the leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(coeff: Scalar, word: Word) -> NcPoly {
        let mut p = NcPoly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn gen(g: Gen) -> NcPoly {
        NcPoly::monomial(Scalar::rat_i64(1), Word::single(g))
    }

    pub fn constant(c: Scalar) -> NcPoly {
        NcPoly::monomial(c, Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// Adds `c * w` in place, dropping the term if the sum cancels.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Leading term under deg-lex. Errors on the zero polynomial.
    pub fn leading_term(&self) -> Result<(&Word, &Scalar), FreeAlgError> {
        self.terms
            .iter()
            .next_back()
            .ok_or(FreeAlgError::ZeroPolynomial)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.degree())
    }

    /// True when every word has the same length.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|w| w.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, s)| (w.clone(), s * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// `u * self * v` for words `u`, `v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (u.concat(w).concat(v), c.clone()))
                .collect(),
        }
    }

    /// Coefficient vector on the full word basis of one degree; `words` must
    /// be sorted consistently with how the caller indexes it.
    pub fn coeff_vector(&self, words: &[Word]) -> Vec<Scalar> {
        words
            .iter()
            .map(|w| self.coeff(w).cloned().unwrap_or_else(|| Scalar::rat_i64(0)))
            .collect()
    }

    pub fn parse(field: &FieldSpec, text: &str) -> Result<NcPoly, FreeAlgError> {
        parse_poly(field, text)
    }
}

impl std::ops::Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }
}

impl std::ops::Add for NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: NcPoly) -> NcPoly {
        &self + &rhs
    }
}

impl std::ops::Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        &self - &rhs
    }
}

impl std::ops::Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.mul(rhs)
    }
}

impl std::ops::Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeAlgError {
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl fmt::Display for NcPoly {
    /// Canonical form: terms in descending deg-lex order, ` + `/` - `
    /// separators, coefficients printed only when not `1`, powers compressed
    /// (`y1^2*y2`). Compound coefficients are parenthesized so the printed
    /// form always re-parses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_coeff_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) if !cs.starts_with("(-") => ("-", rest.to_string()),
                _ => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_is_one = mag == "1";
            if w.degree() == 0 {
                write!(f, "{mag}")?;
            } else if coeff_is_one {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Parses the textual polynomial grammar: terms `coef*word` joined by `+`
/// and `-`, words like `y2*x1` or `y1^2*y2`, whitespace-insensitive.
/// Compound scalar coefficients must be parenthesized: `(2+a)*x1*y1`.
fn parse_poly(field: &FieldSpec, text: &str) -> Result<NcPoly, FreeAlgError> {
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(FreeAlgError::Parse("empty polynomial".into()));
    }
    if src == "0" {
        return Ok(NcPoly::zero());
    }
    let bytes = src.as_bytes();
    let mut out = NcPoly::zero();
    let mut i = 0;
    while i < bytes.len() {
        // sign
        let mut negative = false;
        loop {
            match bytes.get(i) {
                Some(b'+') => i += 1,
                Some(b'-') => {
                    negative = !negative;
                    i += 1;
                }
                _ => break,
            }
        }
        if i >= bytes.len() {
            return Err(FreeAlgError::Parse("dangling sign".into()));
        }
        let mut coeff = field.one();
        let mut word: Vec<Gen> = Vec::new();
        let mut saw_factor = false;
        loop {
            match bytes.get(i) {
                Some(b'(') => {
                    let close = src[i..]
                        .find(')')
                        .ok_or_else(|| FreeAlgError::Parse("unbalanced parenthesis".into()))?;
                    let inner = &src[i + 1..i + close];
                    coeff = &coeff * &field.parse_scalar(inner)?;
                    i += close + 1;
                }
                Some(b'x') | Some(b'y') => {
                    if i + 1 >= bytes.len() {
                        return Err(FreeAlgError::Parse("truncated generator".into()));
                    }
                    let g = Gen::parse(&src[i..i + 2])
                        .ok_or_else(|| FreeAlgError::Parse(format!("bad generator in `{src}`")))?;
                    i += 2;
                    let mut power = 1usize;
                    if bytes.get(i) == Some(&b'^') {
                        i += 1;
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        power = src[start..i]
                            .parse()
                            .map_err(|_| FreeAlgError::Parse("bad exponent".into()))?;
                    }
                    word.extend(std::iter::repeat(g).take(power));
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_digit() || bytes[i] == b'/' || bytes[i] == b'a')
                    {
                        i += 1;
                    }
                    coeff = &coeff * &field.parse_scalar(&src[start..i])?;
                }
                Some(b'a') => {
                    coeff = &coeff * &field.parse_scalar("a")?;
                    i += 1;
                }
                _ => {
                    if !saw_factor {
                        return Err(FreeAlgError::Parse(format!(
                            "expected a term at byte {i} of `{src}`"
                        )));
                    }
                    break;
                }
            }
            saw_factor = true;
            if bytes.get(i) == Some(&b'*') {
                i += 1;
            } else {
                break;
            }
        }
        if negative {
            coeff = coeff.neg();
        }
        out.add_term(Word(word), coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;
    use rand::Rng;
    use rand::SeedableRng;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn p(s: &str) -> NcPoly {
        NcPoly::parse(&q(), s).unwrap()
    }

    #[test]
    fn bilinear_expansion_in_the_free_algebra() {
        // (x1 + x2)(x1 - x2) keeps the x2*x1 term: no relations apply here
        let got = &p("x1 + x2") * &p("x1 - x2");
        assert_eq!(got, p("x1^2 - x1*x2 + x2*x1 - x2^2"));
    }

    #[test]
    fn scaling_by_zero_gives_the_empty_map() {
        let z = p("x1*y1 + 3*y2").scale(&Scalar::rat_i64(0));
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn quadratic_y_product_expansion() {
        // (y1 - y2)(y1 - p*y2) with p = 5
        let got = &p("y1 - y2") * &p("y1 - 5*y2");
        assert_eq!(got, p("y1^2 - 5*y1*y2 - y2*y1 + 5*y2^2"));
    }

    #[test]
    fn leading_terms_under_deg_lex() {
        let (w, c) = p("x2*x1 - 7*x1*x2").leading_term().map(|(w, c)| (w.clone(), c.clone())).unwrap();
        assert_eq!(w, Word::of(&[Gen::X2, Gen::X1]));
        assert!(c.is_one());

        let poly = p("y2*y1 - 2*y1*y2 - 3*y1^2");
        let lt = poly.leading_term().unwrap();
        assert_eq!(*lt.0, Word::of(&[Gen::Y2, Gen::Y1]));

        let poly = p("y1*x1 - x1*y1");
        let lt = poly.leading_term().unwrap();
        assert_eq!(*lt.0, Word::of(&[Gen::Y1, Gen::X1]));

        assert_eq!(
            NcPoly::zero().leading_term().unwrap_err(),
            FreeAlgError::ZeroPolynomial
        );
    }

    #[test]
    fn order_is_multiplicative_on_short_words() {
        // u < v implies wu < wv and uw < vw, exhaustively for degree <= 3
        let mut words = vec![Word::empty()];
        for d in 1..=3 {
            let prev: Vec<Word> = words.iter().filter(|w| w.degree() == d - 1).cloned().collect();
            for w in prev {
                for g in GENS {
                    words.push(w.concat(&Word::single(g)));
                }
            }
        }
        for u in &words {
            for v in &words {
                if u < v {
                    for w in &words {
                        assert!(w.concat(u) < w.concat(v));
                        assert!(u.concat(w) < v.concat(w));
                    }
                }
            }
        }
    }

    fn random_poly<R: Rng>(rng: &mut R, field: &FieldSpec) -> NcPoly {
        let mut out = NcPoly::zero();
        for _ in 0..rng.gen_range(0..5) {
            let len = rng.gen_range(0..4);
            let w: Vec<Gen> = (0..len).map(|_| GENS[rng.gen_range(0..4)]).collect();
            out.add_term(Word(w), field.random(rng));
        }
        out
    }

    #[test]
    fn mul_is_associative_and_distributive() {
        let f = q();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let a = random_poly(&mut rng, &f);
            let b = random_poly(&mut rng, &f);
            let c = random_poly(&mut rng, &f);
            assert_eq!((&a * &b).mul(&c), a.mul(&(&b * &c)));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }

    #[test]
    fn parse_print_round_trip() {
        let cases = [
            "-y1^2 + x1*x2",
            "y2*y1 - y1*y2 - y1^2",
            "-5*x1^3 + x2*y1 + 3/2*x1*y2",
            "0",
        ];
        for s in cases {
            let poly = p(s);
            assert_eq!(poly.to_string(), s);
            assert_eq!(NcPoly::parse(&q(), &poly.to_string()).unwrap(), poly);
        }
        // quadratic-field coefficients round-trip through parentheses
        let f = FieldSpec::gaussian();
        let poly = NcPoly::parse(&f, "(2+a)*x1*y1 - a*x2^2").unwrap();
        assert_eq!(poly.to_string(), "-a*x2^2 + (2+a)*x1*y1");
        assert_eq!(NcPoly::parse(&f, &poly.to_string()).unwrap(), poly);
    }

    #[test]
    fn homogeneity_is_checkable() {
        assert!(p("x1*x2 + y1*y2").is_homogeneous());
        assert!(!p("x1 + x1*x2").is_homogeneous());
        assert!(NcPoly::zero().is_homogeneous());
    }
}
