//! The catalog of the 26 families of trimmed double-extension data, keyed
//! `A` through `Z`: parametric coefficient matrices, parameter constraints,
//! published determinants, Ore-flag expectations, duality partners with
//! stored equivalence witnesses, and the normalizing-element claims.

use crate::dext::{
    self, mat2_from_i64, DEData, DextError, Mat2, MMatrix, ParamPair, SigmaMatrix,
};
use crate::freealg::{Gen, NcPoly, Word};
use crate::scalar::{FieldSpec, Scalar, ScalarError};
use std::collections::BTreeMap;

pub type Params = BTreeMap<String, Scalar>;

/// Convenience constructor for a parameter assignment.
pub fn params(entries: &[(&str, Scalar)]) -> Params {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown family `{0}` (expected a letter A-Z)")]
    UnknownFamily(char),
    #[error("family {family}: missing parameter `{name}`")]
    MissingParam { family: char, name: &'static str },
    #[error("family {family}: constraint violated: {condition}")]
    ConstraintViolated {
        family: char,
        condition: &'static str,
    },
    #[error("family {family}: needs a field containing a root of {minpoly}")]
    MissingConstant {
        family: char,
        minpoly: &'static str,
    },
    #[error("family {family}: no duality witness matched ({detail})")]
    WitnessFailed { family: char, detail: String },
    #[error(transparent)]
    Dext(#[from] DextError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Duality {
    SelfDual,
    Partner(char),
}

/// Static description of one family, used by listing and validation.
pub struct FamilyInfo {
    pub name: char,
    pub p_display: &'static str,
    pub q_display: &'static str,
    pub params: &'static [&'static str],
    pub constraints: &'static [&'static str],
    /// Field in which the default specializations live.
    pub field_hint: &'static str,
    pub duality: Duality,
    /// Whether an iterated-Ore flag (M12 = 0 or M21 = 0) is expected.
    pub ore_expected: bool,
}

pub const FAMILY_NAMES: [char; 26] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'Q', 'R',
    'S', 'T', 'U', 'V', 'W', 'X', 'Y', 'Z',
];

pub fn family_info(name: char) -> Result<&'static FamilyInfo, CatalogError> {
    FAMILY_TABLE
        .iter()
        .find(|f| f.name == name)
        .ok_or(CatalogError::UnknownFamily(name))
}

static FAMILY_TABLE: [FamilyInfo; 26] = [
    FamilyInfo { name: 'A', p_display: "(1, 1)", q_display: "(1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('A'), ore_expected: true },
    FamilyInfo { name: 'B', p_display: "(p, 0), p^2 = -1", q_display: "(p, 0)", params: &["h", "p"], constraints: &["h != 0", "p^2 + 1 = 0"], field_hint: "Q(a^2+1)", duality: Duality::SelfDual, ore_expected: false },
    FamilyInfo { name: 'C', p_display: "(p, 0), p^2 + p + 1 = 0", q_display: "(p, 0)", params: &["h", "p"], constraints: &["h != 0", "p^2 + p + 1 = 0"], field_hint: "Q(a^2+a+1)", duality: Duality::SelfDual, ore_expected: false },
    FamilyInfo { name: 'D', p_display: "(p, 0)", q_display: "(-1, 0)", params: &["h", "p"], constraints: &["h != 0", "p != 0"], field_hint: "Q", duality: Duality::Partner('D'), ore_expected: true },
    FamilyInfo { name: 'E', p_display: "(p, 0), p^2 = -1", q_display: "(-1, 0)", params: &["h", "p"], constraints: &["h != 0", "p^2 + 1 = 0"], field_hint: "Q(a^2+1)", duality: Duality::Partner('J'), ore_expected: false },
    FamilyInfo { name: 'F', p_display: "(p, 0), p^2 = -1", q_display: "(-1, 0)", params: &["h", "p"], constraints: &["h != 0", "p^2 + 1 = 0"], field_hint: "Q(a^2+1)", duality: Duality::Partner('I'), ore_expected: false },
    FamilyInfo { name: 'G', p_display: "(p, 0)", q_display: "(1, 0)", params: &["h", "p", "f"], constraints: &["h != 0", "p != 0", "f != 0"], field_hint: "Q", duality: Duality::Partner('G'), ore_expected: true },
    FamilyInfo { name: 'H', p_display: "(-1, 0)", q_display: "(1, 1)", params: &["h", "f"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('H'), ore_expected: true },
    FamilyInfo { name: 'I', p_display: "(-1, 0)", q_display: "(q, 0), q^2 = -1", params: &["h", "q"], constraints: &["h != 0", "q^2 + 1 = 0"], field_hint: "Q(a^2+1)", duality: Duality::Partner('F'), ore_expected: false },
    FamilyInfo { name: 'J', p_display: "(-1, 0)", q_display: "(q, 0), q^2 = -1", params: &["h", "q"], constraints: &["h != 0", "q^2 + 1 = 0"], field_hint: "Q(a^2+1)", duality: Duality::Partner('E'), ore_expected: false },
    FamilyInfo { name: 'K', p_display: "(-1, 0)", q_display: "(q, 0)", params: &["h", "f", "q"], constraints: &["h != 0", "f != 0", "q != 0"], field_hint: "Q", duality: Duality::Partner('K'), ore_expected: true },
    FamilyInfo { name: 'L', p_display: "(-1, 0)", q_display: "(q, 0)", params: &["h", "f", "q"], constraints: &["h != 0", "f != 0", "q != 0"], field_hint: "Q", duality: Duality::Partner('L'), ore_expected: true },
    FamilyInfo { name: 'M', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h", "f"], constraints: &["h != 0", "f != 1"], field_hint: "Q", duality: Duality::SelfDual, ore_expected: false },
    FamilyInfo { name: 'N', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["f", "g"], constraints: &["f^2 != g^2"], field_hint: "Q", duality: Duality::Partner('P'), ore_expected: false },
    FamilyInfo { name: 'O', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h", "f"], constraints: &["h != 0", "f != 1"], field_hint: "Q", duality: Duality::SelfDual, ore_expected: false },
    FamilyInfo { name: 'P', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h", "f"], constraints: &["h != 0", "f != 1"], field_hint: "Q", duality: Duality::Partner('N'), ore_expected: false },
    FamilyInfo { name: 'Q', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('Q'), ore_expected: true },
    FamilyInfo { name: 'R', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::SelfDual, ore_expected: false },
    FamilyInfo { name: 'S', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::SelfDual, ore_expected: false },
    FamilyInfo { name: 'T', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('U'), ore_expected: false },
    FamilyInfo { name: 'U', p_display: "(-1, 0)", q_display: "(-1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('T'), ore_expected: false },
    FamilyInfo { name: 'V', p_display: "(-1, 0)", q_display: "(1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('V'), ore_expected: true },
    FamilyInfo { name: 'W', p_display: "(-1, 0)", q_display: "(1, 0)", params: &["h", "f"], constraints: &["h != 0", "f != -1"], field_hint: "Q", duality: Duality::Partner('Z'), ore_expected: false },
    FamilyInfo { name: 'X', p_display: "(-1, 0)", q_display: "(1, 0)", params: &["h"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('X'), ore_expected: true },
    FamilyInfo { name: 'Y', p_display: "(-1, 0)", q_display: "(1, 0)", params: &["h", "f"], constraints: &["h != 0"], field_hint: "Q", duality: Duality::Partner('Y'), ore_expected: true },
    FamilyInfo { name: 'Z', p_display: "(1, 0)", q_display: "(-1, 0)", params: &["h", "f"], constraints: &["h != 0", "f != 0", "f != -1"], field_hint: "Q", duality: Duality::Partner('W'), ore_expected: false },
];

/// True when the family's duality entry is a genuine claim of the catalog
/// (a dual pair or a selfdual family); the Ore families carry no claim.
pub fn has_duality_claim(name: char) -> bool {
    matches!(
        name,
        'B' | 'C' | 'E' | 'F' | 'I' | 'J' | 'M' | 'N' | 'O' | 'P' | 'R' | 'S' | 'T' | 'U' | 'W'
            | 'Z'
    )
}

fn get<'a>(name: char, p: &'a Params, key: &'static str) -> Result<&'a Scalar, CatalogError> {
    p.get(key)
        .ok_or(CatalogError::MissingParam { family: name, name: key })
}

fn require(cond: bool, family: char, condition: &'static str) -> Result<(), CatalogError> {
    if cond {
        Ok(())
    } else {
        Err(CatalogError::ConstraintViolated { family, condition })
    }
}

/// Checks `value^2 + u*value + v = 0` for the algebraic-constant families.
fn check_minpoly(
    family: char,
    value: &Scalar,
    u: i64,
    v: i64,
    minpoly: &'static str,
) -> Result<(), CatalogError> {
    let lhs = &(value * value)
        + &(&(&Scalar::rat_i64(u) * value) + &Scalar::rat_i64(v));
    if lhs.is_zero() {
        Ok(())
    } else {
        Err(CatalogError::MissingConstant { family, minpoly })
    }
}

struct Entries {
    sigma: [[Scalar; 4]; 4],
    q: ParamPair,
    p: ParamPair,
}

fn s(n: i64) -> Scalar {
    Scalar::rat_i64(n)
}

/// The parametric matrix of one family, before the global twist factor.
fn family_entries(name: char, pa: &Params) -> Result<Entries, CatalogError> {
    let neg1 = ParamPair::of_i64(-1, 0);
    let one0 = ParamPair::of_i64(1, 0);
    let one1 = ParamPair::of_i64(1, 1);
    let e = match name {
        'A' => Entries {
            sigma: [
                [s(1), s(0), s(0), s(0)],
                [s(0), s(1), s(1), s(0)],
                [s(0), s(0), s(1), s(0)],
                [s(0), s(-2), s(-1), s(1)],
            ],
            q: one0,
            p: one1,
        },
        'B' => {
            let p = get(name, pa, "p")?.clone();
            check_minpoly(name, &p, 0, 1, "p^2 + 1")?;
            Entries {
                sigma: [
                    [s(0), s(0), s(0), s(1)],
                    [s(0), s(0), s(1), s(0)],
                    [s(0), s(-1), s(0), s(0)],
                    [s(1), s(0), s(0), s(0)],
                ],
                q: ParamPair::new(p.clone(), s(0)),
                p: ParamPair::new(p, s(0)),
            }
        }
        'C' => {
            let p = get(name, pa, "p")?.clone();
            check_minpoly(name, &p, 1, 1, "p^2 + p + 1")?;
            let p2 = &p * &p;
            Entries {
                sigma: [
                    [s(-1), p2.clone(), s(1), p.neg()],
                    [p.neg(), s(1), s(1), p.neg()],
                    [p.neg(), &s(-2) * &p2, p.clone(), p.neg()],
                    [p.neg(), p2.clone(), s(1), s(-1)],
                ],
                q: ParamPair::new(p.clone(), s(0)),
                p: ParamPair::new(p, s(0)),
            }
        }
        'D' => {
            let p = get(name, pa, "p")?.clone();
            require(!p.is_zero(), name, "p != 0")?;
            let p2 = &p * &p;
            Entries {
                sigma: [
                    [p.neg(), s(0), s(0), s(0)],
                    [s(0), p2.neg(), s(1), s(0)],
                    [s(0), s(0), p.clone(), s(0)],
                    [s(1), s(0), s(0), s(1)],
                ],
                q: neg1,
                p: ParamPair::new(p, s(0)),
            }
        }
        'E' => {
            let p = get(name, pa, "p")?.clone();
            check_minpoly(name, &p, 0, 1, "p^2 + 1")?;
            Entries {
                sigma: [
                    [s(0), s(0), s(1), s(1)],
                    [s(0), s(0), s(1), s(-1)],
                    [s(-1), s(1), s(0), s(0)],
                    [s(1), s(1), s(0), s(0)],
                ],
                q: neg1,
                p: ParamPair::new(p, s(0)),
            }
        }
        'F' => {
            let p = get(name, pa, "p")?.clone();
            check_minpoly(name, &p, 0, 1, "p^2 + 1")?;
            Entries {
                sigma: [
                    [s(-1), p.neg(), s(1), s(-1)],
                    [p.neg(), s(1), s(1), s(1)],
                    [p.neg(), p.clone(), p.clone(), s(1)],
                    [p.neg(), p.neg(), s(1), p.neg()],
                ],
                q: neg1,
                p: ParamPair::new(p, s(0)),
            }
        }
        'G' => {
            let p = get(name, pa, "p")?.clone();
            let f = get(name, pa, "f")?.clone();
            require(!p.is_zero(), name, "p != 0")?;
            require(!f.is_zero(), name, "f != 0")?;
            let p2 = &p * &p;
            Entries {
                sigma: [
                    [p.clone(), s(0), s(0), s(0)],
                    [p.clone(), p2, s(1), s(0)],
                    [s(0), s(0), p.clone(), s(0)],
                    [f, s(0), s(-1), s(1)],
                ],
                q: one0,
                p: ParamPair::new(p, s(0)),
            }
        }
        'H' => {
            let f = get(name, pa, "f")?.clone();
            Entries {
                sigma: [
                    [s(0), s(0), s(1), s(0)],
                    [s(0), s(0), f.clone(), s(1)],
                    [s(1), s(0), s(0), s(0)],
                    [f, s(1), s(0), s(0)],
                ],
                q: one1,
                p: neg1,
            }
        }
        'I' => {
            let q = get(name, pa, "q")?.clone();
            check_minpoly(name, &q, 0, 1, "q^2 + 1")?;
            Entries {
                sigma: [
                    [q.neg(), q.neg(), s(1), q.neg()],
                    [s(1), s(1), s(1), q.neg()],
                    [s(1), q.clone(), q.clone(), q.neg()],
                    [s(-1), q.neg(), s(1), s(-1)],
                ],
                q: ParamPair::new(q, s(0)),
                p: neg1,
            }
        }
        'J' => {
            let q = get(name, pa, "q")?.clone();
            check_minpoly(name, &q, 0, 1, "q^2 + 1")?;
            Entries {
                sigma: [
                    [s(0), s(1), s(0), s(1)],
                    [s(-1), s(0), s(1), s(0)],
                    [s(0), s(1), s(0), s(-1)],
                    [s(1), s(0), s(1), s(0)],
                ],
                q: ParamPair::new(q, s(0)),
                p: neg1,
            }
        }
        'K' => {
            let f = get(name, pa, "f")?.clone();
            let q = get(name, pa, "q")?.clone();
            require(!f.is_zero(), name, "f != 0")?;
            require(!q.is_zero(), name, "q != 0")?;
            Entries {
                sigma: [
                    [s(1), s(0), s(0), s(0)],
                    [s(0), s(0), s(0), s(1)],
                    [s(0), s(0), s(1), s(0)],
                    [s(0), f, s(0), s(0)],
                ],
                q: ParamPair::new(q, s(0)),
                p: neg1,
            }
        }
        'L' => {
            let f = get(name, pa, "f")?.clone();
            let q = get(name, pa, "q")?.clone();
            require(!f.is_zero(), name, "f != 0")?;
            require(!q.is_zero(), name, "q != 0")?;
            Entries {
                sigma: [
                    [s(0), s(0), f.clone(), s(0)],
                    [s(0), s(0), s(0), s(1)],
                    [f, s(0), s(0), s(0)],
                    [s(0), s(1), s(0), s(0)],
                ],
                q: ParamPair::new(q, s(0)),
                p: neg1,
            }
        }
        'M' => {
            let f = get(name, pa, "f")?.clone();
            require(f != s(1), name, "f != 1")?;
            Entries {
                sigma: [
                    [s(0), s(1), s(1), s(0)],
                    [f.clone(), s(0), s(0), s(-1)],
                    [s(1), s(0), s(0), s(-1)],
                    [s(0), s(-1), f.neg(), s(0)],
                ],
                q: neg1.clone(),
                p: neg1,
            }
        }
        'N' => {
            let f = get(name, pa, "f")?.clone();
            let g = get(name, pa, "g")?.clone();
            require(&(&f * &f) != &(&g * &g), name, "f^2 != g^2")?;
            Entries {
                sigma: [
                    [s(0), g.neg(), s(0), f.clone()],
                    [g.clone(), s(0), f.clone(), s(0)],
                    [s(0), f.clone(), s(0), g.neg()],
                    [f, s(0), g, s(0)],
                ],
                q: neg1.clone(),
                p: neg1,
            }
        }
        'O' => {
            let f = get(name, pa, "f")?.clone();
            require(f != s(1), name, "f != 1")?;
            Entries {
                sigma: [
                    [s(1), s(0), s(0), f.clone()],
                    [s(0), s(-1), s(1), s(0)],
                    [s(0), f, s(-1), s(0)],
                    [s(1), s(0), s(0), s(1)],
                ],
                q: neg1.clone(),
                p: neg1,
            }
        }
        'P' => {
            let f = get(name, pa, "f")?.clone();
            require(f != s(1), name, "f != 1")?;
            Entries {
                sigma: [
                    [s(0), s(0), s(1), f.clone()],
                    [s(0), s(0), s(1), s(1)],
                    [s(1), f.neg(), s(0), s(0)],
                    [s(-1), s(1), s(0), s(0)],
                ],
                q: neg1.clone(),
                p: neg1,
            }
        }
        'Q' => Entries {
            sigma: [
                [s(0), s(0), s(1), s(0)],
                [s(1), s(1), s(1), s(0)],
                [s(-1), s(0), s(0), s(0)],
                [s(1), s(0), s(-1), s(1)],
            ],
            q: neg1.clone(),
            p: neg1,
        },
        'R' => Entries {
            sigma: [
                [s(1), s(1), s(1), s(0)],
                [s(0), s(0), s(1), s(0)],
                [s(0), s(1), s(0), s(0)],
                [s(0), s(-1), s(-1), s(1)],
            ],
            q: neg1.clone(),
            p: neg1,
        },
        'S' => Entries {
            sigma: [
                [s(-1), s(1), s(1), s(1)],
                [s(1), s(-1), s(1), s(1)],
                [s(1), s(1), s(-1), s(1)],
                [s(1), s(1), s(1), s(-1)],
            ],
            q: neg1.clone(),
            p: neg1,
        },
        'T' => Entries {
            sigma: [
                [s(-1), s(1), s(1), s(1)],
                [s(1), s(-1), s(1), s(1)],
                [s(1), s(1), s(1), s(-1)],
                [s(1), s(1), s(-1), s(1)],
            ],
            q: neg1.clone(),
            p: neg1,
        },
        'U' => Entries {
            sigma: [
                [s(-1), s(1), s(1), s(1)],
                [s(1), s(1), s(1), s(-1)],
                [s(1), s(1), s(-1), s(1)],
                [s(1), s(-1), s(1), s(1)],
            ],
            q: neg1.clone(),
            p: neg1,
        },
        'V' => Entries {
            sigma: [
                [s(0), s(1), s(1), s(0)],
                [s(0), s(1), s(0), s(0)],
                [s(-1), s(1), s(0), s(0)],
                [s(0), s(0), s(0), s(1)],
            ],
            q: one0,
            p: neg1,
        },
        'W' => {
            let f = get(name, pa, "f")?.clone();
            require(f != s(-1), name, "f != -1")?;
            Entries {
                sigma: [
                    [s(0), f.clone(), s(1), s(0)],
                    [s(1), s(0), s(0), s(-1)],
                    [s(1), s(0), s(0), f],
                    [s(0), s(-1), s(1), s(0)],
                ],
                q: one0,
                p: neg1,
            }
        }
        'X' => Entries {
            sigma: [
                [s(0), s(0), s(1), s(0)],
                [s(0), s(0), s(1), s(1)],
                [s(1), s(0), s(0), s(0)],
                [s(1), s(1), s(0), s(0)],
            ],
            q: one0,
            p: neg1,
        },
        'Y' => {
            let f = get(name, pa, "f")?.clone();
            Entries {
                sigma: [
                    [s(1), s(0), s(0), s(0)],
                    [f.clone(), s(-1), s(1), s(0)],
                    [s(0), s(0), s(1), s(0)],
                    [s(1), s(0), f, s(-1)],
                ],
                q: one0,
                p: neg1,
            }
        }
        'Z' => {
            let f = get(name, pa, "f")?.clone();
            require(!f.is_zero(), name, "f != 0")?;
            require(f != s(-1), name, "f != -1")?;
            Entries {
                sigma: [
                    [s(1), s(0), s(0), s(1)],
                    [s(0), s(1), s(1), s(0)],
                    [s(0), f.clone(), s(-1), s(0)],
                    [f, s(0), s(0), s(-1)],
                ],
                q: neg1,
                p: one0,
            }
        }
        other => return Err(CatalogError::UnknownFamily(other)),
    };
    Ok(e)
}

/// True when the family carries the global twist parameter `h` (every
/// family except `N`, whose published matrix has no twist factor).
pub fn has_twist_param(name: char) -> bool {
    name != 'N'
}

/// Instantiates a family at a concrete parameter assignment over `field`.
/// Violated side conditions and missing algebraic constants are reported by
/// name.
pub fn instantiate(name: char, pa: &Params, field: &FieldSpec) -> Result<DEData, CatalogError> {
    let entries = family_entries(name, pa)?;
    let sigma = if has_twist_param(name) {
        let h = get(name, pa, "h")?;
        require(!h.is_zero(), name, "h != 0")?;
        SigmaMatrix::from_rows(entries.sigma).scale(h)
    } else {
        SigmaMatrix::from_rows(entries.sigma)
    };
    Ok(DEData::new(field.clone(), entries.q, entries.p, sigma)?)
}

/// The published variant of family `D` with `P = (1, 0)`, `Q = (-1, 0)`.
pub fn family_d_variant(h: &Scalar, field: &FieldSpec) -> Result<DEData, CatalogError> {
    let sigma = SigmaMatrix::from_i64_rows([
        [-1, 0, 0, 0],
        [0, -1, 1, 0],
        [0, 0, 1, 0],
        [1, 0, 0, 1],
    ])
    .scale(h);
    Ok(DEData::new(
        field.clone(),
        ParamPair::of_i64(-1, 0),
        ParamPair::of_i64(1, 0),
        sigma,
    )?)
}

/// Three concrete parameter assignments per family satisfying every side
/// condition, including one with a non-unit twist where the family has one.
/// Every property suite runs over these.
pub fn default_specializations(name: char) -> Result<Vec<(FieldSpec, Params)>, CatalogError> {
    let q = FieldSpec::Rationals;
    let gauss = FieldSpec::gaussian;
    let eis = FieldSpec::eisenstein;
    let sp = |field: FieldSpec, entries: &[(&str, Scalar)]| (field, params(entries));
    let out = match name {
        'A' | 'Q' | 'R' | 'S' | 'T' | 'U' | 'V' | 'X' => vec![
            sp(q.clone(), &[("h", s(1))]),
            sp(q.clone(), &[("h", s(2))]),
            sp(q.clone(), &[("h", s(-3))]),
        ],
        'B' | 'E' | 'F' => {
            let a = gauss().generator().unwrap();
            vec![
                sp(gauss(), &[("h", s(1)), ("p", a.clone())]),
                sp(gauss(), &[("h", s(1)), ("p", a.neg())]),
                sp(gauss(), &[("h", s(3)), ("p", a.clone())]),
            ]
        }
        'C' => {
            let a = eis().generator().unwrap();
            let other_root = (&a * &a).clone(); // the second root, -1 - a
            vec![
                sp(eis(), &[("h", s(1)), ("p", a.clone())]),
                sp(eis(), &[("h", s(1)), ("p", other_root)]),
                sp(eis(), &[("h", s(2)), ("p", a)]),
            ]
        }
        'D' => vec![
            sp(q.clone(), &[("h", s(1)), ("p", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("p", s(-1))]),
            sp(q.clone(), &[("h", s(2)), ("p", s(3))]),
        ],
        'G' => vec![
            sp(q.clone(), &[("h", s(1)), ("p", s(2)), ("f", s(3))]),
            sp(q.clone(), &[("h", s(1)), ("p", s(-1)), ("f", s(-2))]),
            sp(q.clone(), &[("h", s(2)), ("p", s(3)), ("f", s(5))]),
        ],
        'H' => vec![
            sp(q.clone(), &[("h", s(1)), ("f", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("f", s(-3))]),
            sp(q.clone(), &[("h", s(2)), ("f", s(0))]),
        ],
        'I' | 'J' => {
            let a = gauss().generator().unwrap();
            vec![
                sp(gauss(), &[("h", s(1)), ("q", a.clone())]),
                sp(gauss(), &[("h", s(1)), ("q", a.neg())]),
                sp(gauss(), &[("h", s(2)), ("q", a.clone())]),
            ]
        }
        'K' | 'L' => vec![
            sp(q.clone(), &[("h", s(1)), ("f", s(2)), ("q", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("f", s(3)), ("q", s(-1))]),
            sp(q.clone(), &[("h", s(2)), ("f", s(-5)), ("q", s(1))]),
        ],
        'M' => vec![
            sp(q.clone(), &[("h", s(1)), ("f", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("f", s(-1))]),
            sp(q.clone(), &[("h", s(2)), ("f", s(3))]),
        ],
        'N' => vec![
            sp(q.clone(), &[("f", s(2)), ("g", s(3))]),
            sp(q.clone(), &[("f", s(3)), ("g", s(7))]),
            sp(q.clone(), &[("f", s(-5)), ("g", s(2))]),
        ],
        // f = 0 is a published special case of these two families but it
        // collapses M12 to zero (an iterated Ore extension), so the default
        // specializations stay away from it; the f = 0 case has dedicated
        // tests of its own
        'O' | 'P' => vec![
            sp(q.clone(), &[("h", s(1)), ("f", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("f", s(-2))]),
            sp(q.clone(), &[("h", s(2)), ("f", s(-3))]),
        ],
        'W' => vec![
            sp(q.clone(), &[("h", s(1)), ("f", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("f", s(3))]),
            sp(q.clone(), &[("h", s(2)), ("f", s(-3))]),
        ],
        'Y' => vec![
            sp(q.clone(), &[("h", s(1)), ("f", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("f", s(0))]),
            sp(q.clone(), &[("h", s(2)), ("f", s(-3))]),
        ],
        'Z' => vec![
            sp(q.clone(), &[("h", s(1)), ("f", s(2))]),
            sp(q.clone(), &[("h", s(1)), ("f", s(4))]),
            sp(q, &[("h", s(2)), ("f", s(-2))]),
        ],
        other => return Err(CatalogError::UnknownFamily(other)),
    };
    Ok(out)
}

/// The published degree-1 matrix of the determinant automorphism at a
/// parameter assignment, in the same column convention as `dext::det_sigma`.
pub fn expected_det_sigma(name: char, pa: &Params, field: &FieldSpec) -> Result<Mat2, CatalogError> {
    let h2 = if has_twist_param(name) {
        let h = field.promote(get(name, pa, "h")?.clone())?;
        &h * &h
    } else {
        field.one()
    };
    let getf = |key| -> Result<Scalar, CatalogError> {
        Ok(field.promote(get(name, pa, key)?.clone())?)
    };
    let diag = |a: Scalar, b: Scalar| [[a, field.zero()], [field.zero(), b]];
    let scaled_i64 = |m: [[i64; 2]; 2], c: &Scalar| dext::mat2_scale(&mat2_from_i64(m), c);
    let m = match name {
        'A' | 'Y' => scaled_i64([[1, 0], [0, 1]], &h2),
        'B' => {
            let p = getf("p")?;
            dext::mat2_scale(&diag(field.one(), field.from_i64(-1)), &(&p * &h2))
        }
        'C' => {
            let p = getf("p")?;
            dext::mat2_scale(&diag(p, field.one()), &(&s(-3) * &h2))
        }
        'D' => {
            let p = getf("p")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&p * &p).neg() * &h2))
        }
        'E' => {
            let p = getf("p")?;
            scaled_i64([[0, 1], [-1, 0]], &(&(&s(2) * &p) * &h2))
        }
        'F' => {
            let p = getf("p")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&s(-2) * &p) * &h2))
        }
        'G' => {
            let p = getf("p")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&p * &p) * &h2))
        }
        'H' => {
            let f = getf("f")?;
            [
                [h2.clone(), field.zero()],
                [&(&s(2) * &f) * &h2, h2.clone()],
            ]
        }
        'I' => dext::mat2_scale(&diag(field.one(), field.from_i64(-1)), &(&s(2) * &h2)),
        'J' => scaled_i64([[1, 0], [0, 1]], &(&s(2) * &h2)),
        'K' => {
            let f = getf("f")?;
            dext::mat2_scale(&diag(field.one(), f), &h2)
        }
        'L' => {
            let f = getf("f")?;
            dext::mat2_scale(&diag(&f * &f, field.one()), &h2)
        }
        'M' | 'P' => {
            let f = getf("f")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&field.one() - &f) * &h2))
        }
        'N' => {
            let f = getf("f")?;
            let g = getf("g")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&f * &f) - &(&g * &g)))
        }
        'O' => {
            let f = getf("f")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&f - &field.one()) * &h2))
        }
        'Q' => dext::mat2_scale(&diag(field.from_i64(-1), field.one()), &h2),
        'R' => scaled_i64([[0, 1], [-1, 0]], &h2),
        'S' | 'U' => scaled_i64([[1, 0], [0, 1]], &(&s(4) * &h2)),
        'T' => scaled_i64([[0, 1], [1, 0]], &(&s(4) * &h2)),
        'V' => scaled_i64([[-1, 1], [0, 1]], &h2),
        'W' => {
            let f = getf("f")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&f + &field.one()) * &h2))
        }
        'X' => scaled_i64([[1, 0], [2, 1]], &h2),
        'Z' => {
            let f = getf("f")?;
            scaled_i64([[1, 0], [0, 1]], &(&(&f + &field.one()).neg() * &h2))
        }
        other => return Err(CatalogError::UnknownFamily(other)),
    };
    Ok(m)
}

/// The published M re-arrangement (with the twist factor), for validating
/// the transcription of every family against its printed companion matrix.
pub fn expected_m_matrix(name: char, pa: &Params, field: &FieldSpec) -> Result<MMatrix, CatalogError> {
    let getf = |key| -> Result<Scalar, CatalogError> {
        Ok(field.promote(get(name, pa, key)?.clone())?)
    };
    let rows: [[Scalar; 4]; 4] = match name {
        'A' => SigmaMatrix::from_i64_rows([
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 1, 1, 0],
            [0, -1, -2, 1],
        ])
        .rows()
        .clone(),
        'B' => SigmaMatrix::from_i64_rows([
            [0, 0, 0, 1],
            [0, 0, -1, 0],
            [0, 1, 0, 0],
            [1, 0, 0, 0],
        ])
        .rows()
        .clone(),
        'C' => {
            let p = getf("p")?;
            let p2 = &p * &p;
            [
                [s(-1), s(1), p2.clone(), p.neg()],
                [p.neg(), p.clone(), &s(-2) * &p2, p.neg()],
                [p.neg(), s(1), s(1), p.neg()],
                [p.neg(), s(1), p2.clone(), s(-1)],
            ]
        }
        'D' => {
            let p = getf("p")?;
            let p2 = &p * &p;
            [
                [p.neg(), s(0), s(0), s(0)],
                [s(0), p.clone(), s(0), s(0)],
                [s(0), s(1), p2.neg(), s(0)],
                [s(1), s(0), s(0), s(1)],
            ]
        }
        'E' => SigmaMatrix::from_i64_rows([
            [0, 1, 0, 1],
            [-1, 0, 1, 0],
            [0, 1, 0, -1],
            [1, 0, 1, 0],
        ])
        .rows()
        .clone(),
        'F' => {
            let p = getf("p")?;
            [
                [s(-1), s(1), p.neg(), s(-1)],
                [p.neg(), p.clone(), p.clone(), s(1)],
                [p.neg(), s(1), s(1), s(1)],
                [p.neg(), s(1), p.neg(), p.neg()],
            ]
        }
        'G' => {
            let p = getf("p")?;
            let f = getf("f")?;
            let p2 = &p * &p;
            [
                [p.clone(), s(0), s(0), s(0)],
                [s(0), p.clone(), s(0), s(0)],
                [p.clone(), s(1), p2, s(0)],
                [f, s(-1), s(0), s(1)],
            ]
        }
        'H' => {
            let f = getf("f")?;
            [
                [s(0), s(1), s(0), s(0)],
                [s(1), s(0), s(0), s(0)],
                [s(0), f.clone(), s(0), s(1)],
                [f, s(0), s(1), s(0)],
            ]
        }
        'I' => {
            let q = getf("q")?;
            [
                [q.neg(), s(1), q.neg(), q.neg()],
                [s(1), q.clone(), q.clone(), q.neg()],
                [s(1), s(1), s(1), q.neg()],
                [s(-1), s(1), q.neg(), s(-1)],
            ]
        }
        'J' => SigmaMatrix::from_i64_rows([
            [0, 0, 1, 1],
            [0, 0, 1, -1],
            [-1, 1, 0, 0],
            [1, 1, 0, 0],
        ])
        .rows()
        .clone(),
        'K' => {
            let f = getf("f")?;
            [
                [s(1), s(0), s(0), s(0)],
                [s(0), s(1), s(0), s(0)],
                [s(0), s(0), s(0), s(1)],
                [s(0), s(0), f, s(0)],
            ]
        }
        'L' => {
            let f = getf("f")?;
            [
                [s(0), f.clone(), s(0), s(0)],
                [f, s(0), s(0), s(0)],
                [s(0), s(0), s(0), s(1)],
                [s(0), s(0), s(1), s(0)],
            ]
        }
        'M' => {
            let f = getf("f")?;
            [
                [s(0), s(1), s(1), s(0)],
                [s(1), s(0), s(0), s(-1)],
                [f.clone(), s(0), s(0), s(-1)],
                [s(0), f.neg(), s(-1), s(0)],
            ]
        }
        'N' => {
            let f = getf("f")?;
            let g = getf("g")?;
            [
                [s(0), s(0), g.neg(), f.clone()],
                [s(0), s(0), f.clone(), g.neg()],
                [g.clone(), f.clone(), s(0), s(0)],
                [f, g, s(0), s(0)],
            ]
        }
        'O' => {
            let f = getf("f")?;
            [
                [s(1), s(0), s(0), f.clone()],
                [s(0), s(-1), f, s(0)],
                [s(0), s(1), s(-1), s(0)],
                [s(1), s(0), s(0), s(1)],
            ]
        }
        'P' => {
            let f = getf("f")?;
            [
                [s(0), s(1), s(0), f.clone()],
                [s(1), s(0), f.neg(), s(0)],
                [s(0), s(1), s(0), s(1)],
                [s(-1), s(0), s(1), s(0)],
            ]
        }
        'Q' => SigmaMatrix::from_i64_rows([
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
            [1, 1, 1, 0],
            [1, -1, 0, 1],
        ])
        .rows()
        .clone(),
        'R' => SigmaMatrix::from_i64_rows([
            [1, 1, 1, 0],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
            [0, -1, -1, 1],
        ])
        .rows()
        .clone(),
        'S' => SigmaMatrix::from_i64_rows([
            [-1, 1, 1, 1],
            [1, -1, 1, 1],
            [1, 1, -1, 1],
            [1, 1, 1, -1],
        ])
        .rows()
        .clone(),
        'T' => SigmaMatrix::from_i64_rows([
            [-1, 1, 1, 1],
            [1, 1, 1, -1],
            [1, 1, -1, 1],
            [1, -1, 1, 1],
        ])
        .rows()
        .clone(),
        'U' => SigmaMatrix::from_i64_rows([
            [-1, 1, 1, 1],
            [1, -1, 1, 1],
            [1, 1, 1, -1],
            [1, 1, -1, 1],
        ])
        .rows()
        .clone(),
        'V' => SigmaMatrix::from_i64_rows([
            [0, 1, 1, 0],
            [-1, 0, 1, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ])
        .rows()
        .clone(),
        'W' => {
            let f = getf("f")?;
            [
                [s(0), s(1), f.clone(), s(0)],
                [s(1), s(0), s(0), f],
                [s(1), s(0), s(0), s(-1)],
                [s(0), s(1), s(-1), s(0)],
            ]
        }
        // the (3,1) entry printed for this family's M is 1, which is
        // inconsistent with the re-arrangement of its Sigma (and the
        // rebuilt matrix fails the constraint system); Sigma governs
        'X' => SigmaMatrix::from_i64_rows([
            [0, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 1, 0, 1],
            [1, 0, 1, 0],
        ])
        .rows()
        .clone(),
        'Y' => {
            let f = getf("f")?;
            [
                [s(1), s(0), s(0), s(0)],
                [s(0), s(1), s(0), s(0)],
                [f.clone(), s(1), s(-1), s(0)],
                [s(1), f, s(0), s(-1)],
            ]
        }
        'Z' => {
            let f = getf("f")?;
            [
                [s(1), s(0), s(0), s(1)],
                [s(0), s(-1), f.clone(), s(0)],
                [s(0), s(1), s(1), s(0)],
                [f, s(0), s(0), s(-1)],
            ]
        }
        other => return Err(CatalogError::UnknownFamily(other)),
    };
    let m = MMatrix::from_rows(rows);
    if has_twist_param(name) {
        let h = field.promote(get(name, pa, "h")?.clone())?;
        Ok(MMatrix::from_rows(std::array::from_fn(|r| {
            std::array::from_fn(|c| &m.rows()[r][c] * &h)
        })))
    } else {
        Ok(m)
    }
}

// ---- normalizing-element claims ----

/// The subspace a normal-element claim is made against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalSpace {
    /// All four degree-1 generators.
    Gens,
    /// The degree-1 x-span.
    Xs,
    /// The degree-1 y-span.
    Ys,
    /// Degree-2 words in the x-generators.
    XWordsDeg2,
    /// Degree-2 words in the y-generators.
    YWordsDeg2,
}

impl NormalSpace {
    pub fn elements(&self) -> Vec<NcPoly> {
        let w = |gens: &[Gen]| NcPoly::monomial(Scalar::rat_i64(1), Word::of(gens));
        match self {
            NormalSpace::Gens => vec![
                w(&[Gen::X1]),
                w(&[Gen::X2]),
                w(&[Gen::Y1]),
                w(&[Gen::Y2]),
            ],
            NormalSpace::Xs => vec![w(&[Gen::X1]), w(&[Gen::X2])],
            NormalSpace::Ys => vec![w(&[Gen::Y1]), w(&[Gen::Y2])],
            NormalSpace::XWordsDeg2 => vec![
                w(&[Gen::X1, Gen::X1]),
                w(&[Gen::X1, Gen::X2]),
                w(&[Gen::X2, Gen::X1]),
                w(&[Gen::X2, Gen::X2]),
            ],
            NormalSpace::YWordsDeg2 => vec![
                w(&[Gen::Y1, Gen::Y1]),
                w(&[Gen::Y1, Gen::Y2]),
                w(&[Gen::Y2, Gen::Y1]),
                w(&[Gen::Y2, Gen::Y2]),
            ],
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormalClaim {
    pub label: String,
    pub element: NcPoly,
    pub space: NormalSpace,
}

/// The degree-bounded normalizing-element claims attached to each family.
/// Families reduced to iterated Ore extensions carry none. For a family
/// whose published argument runs through its dual partner, the claim is the
/// partner's statement with the generator roles swapped.
pub fn normal_claims(name: char, pa: &Params, field: &FieldSpec) -> Result<Vec<NormalClaim>, CatalogError> {
    let w = |gens: &[Gen]| NcPoly::monomial(Scalar::rat_i64(1), Word::of(gens));
    let gen = |g: Gen| w(&[g]);
    let claim = |label: &str, element: NcPoly, space: NormalSpace| NormalClaim {
        label: label.to_string(),
        element,
        space,
    };
    let out = match name {
        'B' | 'E' | 'P' => vec![
            claim("y1", gen(Gen::Y1), NormalSpace::XWordsDeg2),
            claim("y2", gen(Gen::Y2), NormalSpace::XWordsDeg2),
        ],
        'J' | 'N' => vec![
            claim("x1", gen(Gen::X1), NormalSpace::YWordsDeg2),
            claim("x2", gen(Gen::X2), NormalSpace::YWordsDeg2),
        ],
        'C' => {
            let y1y1y2 = w(&[Gen::Y1, Gen::Y1, Gen::Y2]);
            let cubes = &w(&[Gen::Y1, Gen::Y1, Gen::Y1]) - &w(&[Gen::Y2, Gen::Y2, Gen::Y2]);
            vec![
                claim("y1^2*y2", y1y1y2, NormalSpace::Gens),
                claim("y1^3 - y2^3", cubes, NormalSpace::Gens),
            ]
        }
        'I' => vec![
            claim("y1*y2", w(&[Gen::Y1, Gen::Y2]), NormalSpace::Xs),
            claim(
                "y1^2 + y2^2",
                &w(&[Gen::Y1, Gen::Y1]) + &w(&[Gen::Y2, Gen::Y2]),
                NormalSpace::Xs,
            ),
        ],
        'F' => vec![
            claim("x1*x2", w(&[Gen::X1, Gen::X2]), NormalSpace::Ys),
            claim(
                "x1^2 + x2^2",
                &w(&[Gen::X1, Gen::X1]) + &w(&[Gen::X2, Gen::X2]),
                NormalSpace::Ys,
            ),
        ],
        'M' => {
            let f = field.promote(get(name, pa, "f")?.clone())?;
            let z = &w(&[Gen::X1, Gen::X1]).scale(&f) - &w(&[Gen::X2, Gen::X2]);
            vec![claim("f*x1^2 - x2^2", z, NormalSpace::Gens)]
        }
        'O' => {
            let f = field.promote(get(name, pa, "f")?.clone())?;
            let z = &w(&[Gen::X1, Gen::X1]) - &w(&[Gen::X2, Gen::X2]).scale(&f);
            vec![claim("x1^2 - f*x2^2", z, NormalSpace::Gens)]
        }
        'S' | 'T' | 'Z' => vec![
            claim("x1 + x2", &gen(Gen::X1) + &gen(Gen::X2), NormalSpace::Ys),
            claim("x1 - x2", &gen(Gen::X1) - &gen(Gen::X2), NormalSpace::Ys),
        ],
        'U' | 'W' => vec![
            claim("y1 + y2", &gen(Gen::Y1) + &gen(Gen::Y2), NormalSpace::Xs),
            claim("y1 - y2", &gen(Gen::Y1) - &gen(Gen::Y2), NormalSpace::Xs),
        ],
        _ => Vec::new(),
    };
    Ok(out)
}

// ---- duality witnesses ----

/// A verified equivalence certificate: `apply_twist(transform_xy(dual, bx,
/// by), h)` equals `instantiate(partner, partner_params)` exactly.
#[derive(Clone, Debug)]
pub struct DualityCertificate {
    pub partner: char,
    pub partner_field: FieldSpec,
    pub partner_params: Params,
    pub bx: Mat2,
    pub by: Mat2,
    pub h: Scalar,
}

/// The canonical side from which each duality pair is certified: one
/// witness per pair, plus one per selfdual family.
pub fn canonical_duality_side(name: char) -> Option<char> {
    match name {
        'B' | 'C' | 'M' | 'O' | 'R' | 'S' => Some(name),
        'E' | 'J' => Some('E'),
        'F' | 'I' => Some('F'),
        'N' | 'P' => Some('N'),
        'T' | 'U' => Some('T'),
        'W' | 'Z' => Some('Z'),
        _ => None,
    }
}

/// The field over which a claim's witness lives, together with the stored
/// transformation matrices. Some witnesses need constants the published
/// classification takes from the algebraic closure: a square root of the
/// family parameter (`M`, `O`, `Z`) or a square root of -1 (`N`).
fn stored_witness(
    name: char,
    pa: &Params,
    base: &FieldSpec,
) -> Result<(FieldSpec, Mat2, Mat2), CatalogError> {
    let id = mat2_from_i64([[1, 0], [0, 1]]);
    let swap = mat2_from_i64([[0, 1], [1, 0]]);
    match name {
        'T' | 'E' | 'R' | 'S' => Ok((base.clone(), id.clone(), id)),
        'F' => Ok((base.clone(), id, swap)),
        'C' => Ok((base.clone(), swap.clone(), swap)),
        'B' => {
            let p = base.promote(get(name, pa, "p")?.clone())?;
            let b = [[base.one(), base.zero()], [base.zero(), p.neg()]];
            Ok((base.clone(), b.clone(), b))
        }
        'M' => {
            let f = get(name, pa, "f")?.clone();
            let (field, root) = field_with_sqrt(name, &f, base)?;
            let inv = root.inv().expect("nonzero root");
            let b = [[field.one(), field.zero()], [field.zero(), inv]];
            Ok((field, b.clone(), b))
        }
        'O' => {
            let f = get(name, pa, "f")?.clone();
            let (field, root) = field_with_sqrt(name, &f, base)?;
            let inv = root.inv().expect("nonzero root");
            let bx = [[field.one(), field.zero()], [field.zero(), inv]];
            let by = [[field.one(), field.zero()], [field.zero(), root]];
            Ok((field, bx, by))
        }
        'N' => {
            let f = get(name, pa, "f")?.clone();
            let g = get(name, pa, "g")?.clone();
            let (field, i) = field_with_sqrt(name, &Scalar::rat_i64(-1), base)?;
            let f = field.promote(f)?;
            let g = field.promote(g)?;
            let c = (&g * &f.inv().expect("f != 0 when g != 0 fails elsewhere")).neg();
            let bx = [[field.one(), field.zero()], [field.zero(), c]];
            let by = [[field.one(), field.zero()], [field.zero(), i]];
            Ok((field, bx, by))
        }
        'Z' => {
            let f = get(name, pa, "f")?.clone();
            let (field, root) = field_with_sqrt(name, &f, base)?;
            let bx = [
                [field.one(), root.inv().expect("nonzero root")],
                [root.neg(), field.one()],
            ];
            let by = [[field.one(), field.zero()], [field.zero(), field.one().neg()]];
            Ok((field, bx, by))
        }
        other => Err(CatalogError::WitnessFailed {
            family: other,
            detail: "no stored witness for this side of the claim".into(),
        }),
    }
}

/// A square root of `v` inside `field`, if one exists among `c` and `c*a`
/// shapes (enough for the rational and quadratic fields used here).
pub fn sqrt_in_field(v: &Scalar, field: &FieldSpec) -> Option<Scalar> {
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::Zero;
    let try_rational = |r: &BigRational| -> Option<Scalar> {
        let (num, den) = (r.numer(), r.denom());
        if num < &BigInt::from(0) {
            return None;
        }
        let ns = num.sqrt();
        let ds = den.sqrt();
        if &(&ns * &ns) == num && &(&ds * &ds) == den {
            field.promote(Scalar::Rat(BigRational::new(ns, ds))).ok()
        } else {
            None
        }
    };
    match (v, field) {
        (Scalar::Rat(r), _) => {
            if let Some(root) = try_rational(r) {
                return Some(root);
            }
            // maybe c*a squares to v inside a quadratic field with u = 0:
            // (c a)^2 = -c^2 v0
            if let FieldSpec::Quadratic(min) = field {
                if min.u.is_zero() {
                    let ratio = r / &min.v;
                    if let Some(c) = try_rational(&-ratio) {
                        let a = field.generator().unwrap();
                        return Some(&c * &a);
                    }
                }
            }
            None
        }
        (Scalar::Quad { c0, c1, .. }, _) if c1.is_zero() => {
            let plain = Scalar::Rat(c0.clone());
            sqrt_in_field(&plain, field)
        }
        _ => None,
    }
}

/// The smallest supported field containing a square root of `v`: the base
/// field itself when the root already lives there, else `Q(a^2 - v)` for
/// rational `v`.
pub fn field_with_sqrt(
    family: char,
    v: &Scalar,
    base: &FieldSpec,
) -> Result<(FieldSpec, Scalar), CatalogError> {
    if let Some(root) = sqrt_in_field(v, base) {
        return Ok((base.clone(), root));
    }
    if let Scalar::Rat(r) = v {
        if let Ok(field) = FieldSpec::quadratic(
            num::BigRational::from_integer(0.into()),
            -r.clone(),
        ) {
            let root = field.generator().unwrap();
            return Ok((field, root));
        }
    }
    Err(CatalogError::MissingConstant {
        family,
        minpoly: "a^2 - v (a square root of a parameter)",
    })
}

/// Produces and verifies the duality certificate for the canonical side of
/// a duality claim, at a concrete parameter assignment. The certificate's
/// field may be a quadratic extension of the instantiation field when the
/// witness needs an algebraic constant.
pub fn duality_certificate(
    name: char,
    pa: &Params,
    field: &FieldSpec,
) -> Result<DualityCertificate, CatalogError> {
    let canonical = canonical_duality_side(name).ok_or(CatalogError::WitnessFailed {
        family: name,
        detail: "family carries no duality claim".into(),
    })?;
    if canonical != name {
        return Err(CatalogError::WitnessFailed {
            family: name,
            detail: format!("certified from the `{canonical}` side of the pair"),
        });
    }
    let partner = match family_info(name)?.duality {
        Duality::SelfDual => name,
        Duality::Partner(p) => p,
    };
    let (wfield, bx, by) = stored_witness(name, pa, field)?;
    let d = instantiate(name, pa, &wfield)?;
    let dual = dext::dual_data(&d)?;
    let t = dext::transform_xy(&dual, &bx, &by)?;
    let partner_params = recognize(partner, &t).ok_or_else(|| CatalogError::WitnessFailed {
        family: name,
        detail: format!("transformed dual does not match the `{partner}` pattern"),
    })?;
    let d2 = instantiate(partner, &partner_params, &wfield)?;
    let ok = dext::verify_equivalence_witness(&dual, &d2, &bx, &by, &wfield.one())?;
    if !ok {
        return Err(CatalogError::WitnessFailed {
            family: name,
            detail: "witness verification failed".into(),
        });
    }
    Ok(DualityCertificate {
        partner,
        partner_field: wfield.clone(),
        partner_params,
        bx,
        by,
        h: wfield.one(),
    })
}

/// Matches concrete DE-data against a family pattern, extracting the
/// parameter assignment (including the twist) when it fits exactly.
pub fn recognize(name: char, d: &DEData) -> Option<Params> {
    let rows = d.sigma.rows();
    let field = &d.field;
    // extract candidate parameters from pinned positions, then confirm by
    // rebuilding the family at them
    let candidate: Params = match name {
        'B' => params(&[("h", rows[0][3].clone()), ("p", d.p.skew.clone())]),
        'C' => params(&[("h", rows[0][0].neg()), ("p", d.p.skew.clone())]),
        'E' => params(&[("h", rows[0][2].clone()), ("p", d.p.skew.clone())]),
        'F' => params(&[("h", rows[0][0].neg()), ("p", d.p.skew.clone())]),
        'I' => params(&[("h", rows[1][0].clone()), ("q", d.q.skew.clone())]),
        'J' => params(&[("h", rows[0][1].clone()), ("q", d.q.skew.clone())]),
        'M' => {
            let h = rows[0][1].clone();
            let f = &rows[1][0] * &h.inv().ok()?;
            params(&[("h", h), ("f", f)])
        }
        'N' => {
            let f = rows[0][3].clone();
            let g = rows[0][1].neg();
            params(&[("f", f), ("g", g)])
        }
        'O' => {
            let h = rows[0][0].clone();
            let f = &rows[0][3] * &h.inv().ok()?;
            params(&[("h", h), ("f", f)])
        }
        'P' => {
            let h = rows[0][2].clone();
            let f = &rows[0][3] * &h.inv().ok()?;
            params(&[("h", h), ("f", f)])
        }
        'R' => params(&[("h", rows[0][0].clone())]),
        'S' | 'T' | 'U' => params(&[("h", rows[0][0].neg())]),
        'W' => {
            let h = rows[0][2].clone();
            let f = &rows[0][1] * &h.inv().ok()?;
            params(&[("h", h), ("f", f)])
        }
        'Z' => {
            let h = rows[0][0].clone();
            let f = &rows[3][0] * &h.inv().ok()?;
            params(&[("h", h), ("f", f)])
        }
        _ => return None,
    };
    let rebuilt = instantiate(name, &candidate, field).ok()?;
    (&rebuilt == d).then_some(candidate)
}

/// Candidate 2x2 matrices for the bounded witness search: all invertible
/// matrices, normalized so the first nonzero entry is 1 (conjugation is
/// scale-invariant), with entries drawn from a small set extended by the
/// interesting scalars of the instantiation.
pub fn witness_candidates(extra: &[Scalar], field: &FieldSpec) -> Vec<Mat2> {
    let mut entries: Vec<Scalar> = [0i64, 1, -1, 2, -2]
        .iter()
        .map(|&n| field.from_i64(n))
        .collect();
    entries.push(field.from_ratio(1, 2));
    entries.push(field.from_ratio(-1, 2));
    for e in extra {
        if let Ok(p) = field.promote(e.clone()) {
            if !entries.contains(&p) {
                if let Ok(inv) = p.inv() {
                    if !entries.contains(&inv) {
                        entries.push(inv.clone());
                        entries.push(inv.neg());
                    }
                }
                entries.push(p.neg());
                entries.push(p);
            }
        }
    }
    let mut out = Vec::new();
    // first row starting with 1
    for b in &entries {
        for c in &entries {
            for d in &entries {
                let m = [
                    [field.one(), b.clone()],
                    [c.clone(), d.clone()],
                ];
                if !dext::mat2_det(&m).is_zero() {
                    out.push(m);
                }
            }
        }
    }
    // first row (0, 1)
    for c in &entries {
        if c.is_zero() {
            continue;
        }
        for d in &entries {
            let m = [
                [field.zero(), field.one()],
                [c.clone(), d.clone()],
            ];
            out.push(m);
        }
    }
    out
}
