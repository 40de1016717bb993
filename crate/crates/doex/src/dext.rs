//! The double-extension core: DE-data `(Q, P, Sigma)`, relation synthesis,
//! the System C constraint checks, the determinant of the homomorphism, the
//! M re-arrangement and Ore-reducibility flags, opposite-ring data, twists,
//! linear transformations, and equivalence-witness verification.
//!
//! Index conventions. `Sigma` is the 4x4 array with entry `a(i,j,s,t)` at
//! row `2(i-1)+(s-1)`, column `2(j-1)+(t-1)`: block position (i,j) selects
//! the map `sigma_ij`, inner position (s,t) its coefficient on `x_s -> x_t`.
//! `M` puts the same entry at row `2(s-1)+(i-1)`, column `2(t-1)+(j-1)`; the
//! re-indexing is involutive. The composite `sigma_fg . sigma_st` (inner map
//! applied first) acts on coordinate rows by `S_st * S_fg`; that convention
//! is pinned by the determinant tables (the first catalog family must come
//! out as the identity matrix).

use crate::freealg::{Gen, NcPoly, Word};
use crate::linalg;
use crate::scalar::{FieldSpec, Scalar, ScalarError};
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DextError {
    #[error("skew parameter (the 12-entry of {0}) must be nonzero")]
    ZeroSkew(&'static str),
    #[error("twist scalar must be nonzero")]
    TwistByZero,
    #[error("transformation matrix is singular")]
    SingularTransform,
    #[error("transformed {0}-relation is not in the two-parameter normal form: {1}")]
    NotNormalizable(&'static str, String),
    #[error("parse error in DE-data: {0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A parameter pair `(skew, square)`: `(q12, q11)` for the x-side relation
/// `x2 x1 = q12 x1 x2 + q11 x1^2`, `(p12, p11)` for the y-side one.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPair {
    pub skew: Scalar,
    pub square: Scalar,
}

impl ParamPair {
    pub fn new(skew: Scalar, square: Scalar) -> ParamPair {
        ParamPair { skew, square }
    }

    pub fn of_i64(skew: i64, square: i64) -> ParamPair {
        ParamPair::new(Scalar::rat_i64(skew), Scalar::rat_i64(square))
    }

    /// The opposite-ring parameter `(skew^-1, -skew^-1 * square)`.
    pub fn circ(&self) -> Result<ParamPair, DextError> {
        let inv = self
            .skew
            .inv()
            .map_err(|_| DextError::ZeroSkew("parameter pair"))?;
        Ok(ParamPair {
            square: (&inv * &self.square).neg(),
            skew: inv,
        })
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.skew, self.square)
    }
}

pub type Mat2 = [[Scalar; 2]; 2];

pub fn mat2_from_i64(m: [[i64; 2]; 2]) -> Mat2 {
    m.map(|row| row.map(Scalar::rat_i64))
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))
    })
}

pub fn mat2_add(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + &b[i][j]))
}

pub fn mat2_scale(a: &Mat2, c: &Scalar) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * c))
}

pub fn mat2_det(a: &Mat2) -> Scalar {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

pub fn mat2_inv(a: &Mat2) -> Result<Mat2, DextError> {
    let det = mat2_det(a);
    let inv = det.inv().map_err(|_| DextError::SingularTransform)?;
    Ok([
        [&a[1][1] * &inv, (&a[0][1] * &inv).neg()],
        [(&a[1][0] * &inv).neg(), &a[0][0] * &inv],
    ])
}

pub fn mat2_is_zero(a: &Mat2) -> bool {
    a.iter().all(|row| row.iter().all(Scalar::is_zero))
}

/// The 4x4 coefficient matrix of the graded homomorphism, in the block
/// layout described at module level.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaMatrix {
    rows: [[Scalar; 4]; 4],
}

impl SigmaMatrix {
    pub fn from_rows(rows: [[Scalar; 4]; 4]) -> SigmaMatrix {
        SigmaMatrix { rows }
    }

    pub fn from_i64_rows(rows: [[i64; 4]; 4]) -> SigmaMatrix {
        SigmaMatrix {
            rows: rows.map(|r| r.map(Scalar::rat_i64)),
        }
    }

    pub fn rows(&self) -> &[[Scalar; 4]; 4] {
        &self.rows
    }

    /// Entry `a_{ijst}`, indices 1-based as in the constraint system.
    pub fn a(&self, i: usize, j: usize, s: usize, t: usize) -> &Scalar {
        &self.rows[2 * (i - 1) + (s - 1)][2 * (j - 1) + (t - 1)]
    }

    /// The 2x2 coefficient matrix of `sigma_ij` (rows `s`, columns `t`).
    pub fn block(&self, i: usize, j: usize) -> Mat2 {
        std::array::from_fn(|s| std::array::from_fn(|t| self.a(i, j, s + 1, t + 1).clone()))
    }

    pub fn block_is_zero(&self, i: usize, j: usize) -> bool {
        mat2_is_zero(&self.block(i, j))
    }

    pub fn scale(&self, h: &Scalar) -> SigmaMatrix {
        SigmaMatrix {
            rows: std::array::from_fn(|r| std::array::from_fn(|c| &self.rows[r][c] * h)),
        }
    }

    pub fn det(&self, field: &FieldSpec) -> Scalar {
        linalg::det(self.rows.iter().map(|r| r.to_vec()).collect(), field)
    }
}

fn de_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Fp { val, .. } => val.to_string(),
        _ => s.to_string(),
    }
}

impl fmt::Display for SigmaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(de_scalar).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The re-arrangement of `Sigma` governing y-side transformations and the
/// opposite-ring presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct MMatrix {
    rows: [[Scalar; 4]; 4],
}

impl MMatrix {
    pub fn rows(&self) -> &[[Scalar; 4]; 4] {
        &self.rows
    }

    pub fn from_rows(rows: [[Scalar; 4]; 4]) -> MMatrix {
        MMatrix { rows }
    }

    pub fn from_i64_rows(rows: [[i64; 4]; 4]) -> MMatrix {
        MMatrix {
            rows: rows.map(|r| r.map(Scalar::rat_i64)),
        }
    }

    /// The 2x2 block `M_ij`.
    pub fn block(&self, i: usize, j: usize) -> Mat2 {
        std::array::from_fn(|s| {
            std::array::from_fn(|t| self.rows[2 * (i - 1) + s][2 * (j - 1) + t].clone())
        })
    }

    pub fn block_is_zero(&self, i: usize, j: usize) -> bool {
        mat2_is_zero(&self.block(i, j))
    }

    /// The inverse re-indexing, back to a `SigmaMatrix`.
    pub fn to_sigma(&self) -> SigmaMatrix {
        let mut rows: [[Scalar; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Scalar::rat_i64(0)));
        for i in 0..2 {
            for j in 0..2 {
                for s in 0..2 {
                    for t in 0..2 {
                        rows[2 * i + s][2 * j + t] = self.rows[2 * s + i][2 * t + j].clone();
                    }
                }
            }
        }
        SigmaMatrix { rows }
    }
}

impl fmt::Display for MMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(de_scalar).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Trimmed DE-data: the base-relation parameters `Q`, the adjoined-relation
/// parameters `P`, and the coefficient matrix `Sigma`, over one field.
#[derive(Clone, Debug, PartialEq)]
pub struct DEData {
    pub field: FieldSpec,
    pub q: ParamPair,
    pub p: ParamPair,
    pub sigma: SigmaMatrix,
}

impl DEData {
    /// Builds DE-data, promoting every scalar into `field`. The two skew
    /// parameters must be nonzero; everything else (including invertibility
    /// of `Sigma`) is checked by `check_system_c`, not here.
    pub fn new(
        field: FieldSpec,
        q: ParamPair,
        p: ParamPair,
        sigma: SigmaMatrix,
    ) -> Result<DEData, DextError> {
        let q = ParamPair {
            skew: field.promote(q.skew)?,
            square: field.promote(q.square)?,
        };
        let p = ParamPair {
            skew: field.promote(p.skew)?,
            square: field.promote(p.square)?,
        };
        if q.skew.is_zero() {
            return Err(DextError::ZeroSkew("Q"));
        }
        if p.skew.is_zero() {
            return Err(DextError::ZeroSkew("P"));
        }
        let mut rows = sigma.rows;
        for row in &mut rows {
            for cell in row.iter_mut() {
                *cell = field.promote(cell.clone())?;
            }
        }
        Ok(DEData {
            field,
            q,
            p,
            sigma: SigmaMatrix { rows },
        })
    }
}

/// The six quadratic relations synthesized from the data, in the order the
/// catalog prints them: the x-side relation, the y-side relation, then the
/// four mixing relations `y_i x_s - sum_t a_{i1st} x_t y1 - sum_t a_{i2st}
/// x_t y2` for (i,s) = (1,1), (1,2), (2,1), (2,2).
pub fn synth_relations(d: &DEData) -> Vec<NcPoly> {
    let x = [Gen::X1, Gen::X2];
    let y = [Gen::Y1, Gen::Y2];
    let mut out = Vec::with_capacity(6);

    let mut nrx = NcPoly::monomial(Scalar::rat_i64(1), Word::of(&[Gen::X2, Gen::X1]));
    nrx.add_term(Word::of(&[Gen::X1, Gen::X2]), d.q.skew.neg());
    nrx.add_term(Word::of(&[Gen::X1, Gen::X1]), d.q.square.neg());
    out.push(nrx);

    let mut nry = NcPoly::monomial(Scalar::rat_i64(1), Word::of(&[Gen::Y2, Gen::Y1]));
    nry.add_term(Word::of(&[Gen::Y1, Gen::Y2]), d.p.skew.neg());
    nry.add_term(Word::of(&[Gen::Y1, Gen::Y1]), d.p.square.neg());
    out.push(nry);

    for i in 1..=2 {
        for s in 1..=2 {
            let mut rel = NcPoly::monomial(Scalar::rat_i64(1), Word::of(&[y[i - 1], x[s - 1]]));
            for j in 1..=2 {
                for t in 1..=2 {
                    rel.add_term(Word::of(&[x[t - 1], y[j - 1]]), d.sigma.a(i, j, s, t).neg());
                }
            }
            out.push(rel);
        }
    }
    out
}

/// Outcome of evaluating the 24 constraint equations plus the determinant
/// condition. An empty violation list together with a nonzero determinant
/// is a C-solution; a violation is data, not an error.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SystemCReport {
    pub violations: Vec<String>,
    pub det_sigma_nonzero: bool,
}

impl SystemCReport {
    pub fn is_c_solution(&self) -> bool {
        self.violations.is_empty() && self.det_sigma_nonzero
    }
}

impl fmt::Display for SystemCReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_c_solution() {
            write!(f, "C-solution (24 constraints satisfied, det Sigma != 0)")
        } else {
            write!(f, "violated: {}", self.violations.join(", "))?;
            if !self.det_sigma_nonzero {
                if !self.violations.is_empty() {
                    write!(f, ", ")?;
                }
                write!(f, "det Sigma = 0")?;
            }
            Ok(())
        }
    }
}

/// Residual (left side minus right side) of constraint `Ck.ij`, evaluated
/// exactly as the printed sums of products.
fn constraint_residual(d: &DEData, k: usize, i: usize, j: usize) -> Scalar {
    let a = |i, j, s, t| d.sigma.a(i, j, s, t);
    let q12 = &d.q.skew;
    let q11 = &d.q.square;
    let p12 = &d.p.skew;
    let p11 = &d.p.square;
    match k {
        1 => {
            // x1^2-coefficients of sigma_ij applied to the x-relation
            let lhs = &(&(a(i, 1, 2, 1) * a(1, j, 1, 1)) + &(a(i, 2, 2, 1) * a(2, j, 1, 1)))
                + &(q11 * &(&(a(i, 1, 2, 2) * a(1, j, 1, 1)) + &(a(i, 2, 2, 2) * a(2, j, 1, 1))));
            let rhs = &(q11
                * &(&(&(a(i, 1, 1, 1) * a(1, j, 1, 1)) + &(a(i, 2, 1, 1) * a(2, j, 1, 1)))
                    + &(q11
                        * &(&(a(i, 1, 1, 2) * a(1, j, 1, 1)) + &(a(i, 2, 1, 2) * a(2, j, 1, 1))))))
                + &(q12
                    * &(&(&(a(i, 1, 1, 1) * a(1, j, 2, 1)) + &(a(i, 2, 1, 1) * a(2, j, 2, 1)))
                        + &(q11
                            * &(&(a(i, 1, 1, 2) * a(1, j, 2, 1))
                                + &(a(i, 2, 1, 2) * a(2, j, 2, 1))))));
            &lhs - &rhs
        }
        2 => {
            // x1 x2-coefficients
            let lhs = &(&(a(i, 1, 2, 1) * a(1, j, 1, 2)) + &(a(i, 2, 2, 1) * a(2, j, 1, 2)))
                + &(q12 * &(&(a(i, 1, 2, 2) * a(1, j, 1, 1)) + &(a(i, 2, 2, 2) * a(2, j, 1, 1))));
            let rhs = &(q11
                * &(&(&(a(i, 1, 1, 1) * a(1, j, 1, 2)) + &(a(i, 2, 1, 1) * a(2, j, 1, 2)))
                    + &(q12
                        * &(&(a(i, 1, 1, 2) * a(1, j, 1, 1)) + &(a(i, 2, 1, 2) * a(2, j, 1, 1))))))
                + &(q12
                    * &(&(&(a(i, 1, 1, 1) * a(1, j, 2, 2)) + &(a(i, 2, 1, 1) * a(2, j, 2, 2)))
                        + &(q12
                            * &(&(a(i, 1, 1, 2) * a(1, j, 2, 1))
                                + &(a(i, 2, 1, 2) * a(2, j, 2, 1))))));
            &lhs - &rhs
        }
        3 => {
            // x2^2-coefficients
            let lhs = &(a(i, 1, 2, 2) * a(1, j, 1, 2)) + &(a(i, 2, 2, 2) * a(2, j, 1, 2));
            let rhs = &(q11
                * &(&(a(i, 1, 1, 2) * a(1, j, 1, 2)) + &(a(i, 2, 1, 2) * a(2, j, 1, 2))))
                + &(q12 * &(&(a(i, 1, 1, 2) * a(1, j, 2, 2)) + &(a(i, 2, 1, 2) * a(2, j, 2, 2))));
            &lhs - &rhs
        }
        4 => {
            // first composite relation applied to x_i, coefficient on x_j
            let lhs = &(&(a(1, 1, i, 1) * a(2, 1, 1, j)) + &(a(1, 1, i, 2) * a(2, 1, 2, j)))
                + &(p11 * &(&(a(1, 1, i, 1) * a(2, 2, 1, j)) + &(a(1, 1, i, 2) * a(2, 2, 2, j))));
            let rhs = &(&(&(p11
                * &(&(a(1, 1, i, 1) * a(1, 1, 1, j)) + &(a(1, 1, i, 2) * a(1, 1, 2, j))))
                + &(&(p11 * p11)
                    * &(&(a(1, 1, i, 1) * a(1, 2, 1, j)) + &(a(1, 1, i, 2) * a(1, 2, 2, j)))))
                + &(p12 * &(&(a(2, 1, i, 1) * a(1, 1, 1, j)) + &(a(2, 1, i, 2) * a(1, 1, 2, j)))))
                + &(&(p11 * p12)
                    * &(&(a(2, 1, i, 1) * a(1, 2, 1, j)) + &(a(2, 1, i, 2) * a(1, 2, 2, j))));
            &lhs - &rhs
        }
        5 => {
            let lhs = &(&(a(1, 2, i, 1) * a(2, 1, 1, j)) + &(a(1, 2, i, 2) * a(2, 1, 2, j)))
                + &(p12 * &(&(a(1, 1, i, 1) * a(2, 2, 1, j)) + &(a(1, 1, i, 2) * a(2, 2, 2, j))));
            let rhs = &(&(&(p11
                * &(&(a(1, 2, i, 1) * a(1, 1, 1, j)) + &(a(1, 2, i, 2) * a(1, 1, 2, j))))
                + &(&(p11 * p12)
                    * &(&(a(1, 1, i, 1) * a(1, 2, 1, j)) + &(a(1, 1, i, 2) * a(1, 2, 2, j)))))
                + &(p12 * &(&(a(2, 2, i, 1) * a(1, 1, 1, j)) + &(a(2, 2, i, 2) * a(1, 1, 2, j)))))
                + &(&(p12 * p12)
                    * &(&(a(2, 1, i, 1) * a(1, 2, 1, j)) + &(a(2, 1, i, 2) * a(1, 2, 2, j))));
            &lhs - &rhs
        }
        6 => {
            let lhs = &(a(1, 2, i, 1) * a(2, 2, 1, j)) + &(a(1, 2, i, 2) * a(2, 2, 2, j));
            let rhs = &(p11
                * &(&(a(1, 2, i, 1) * a(1, 2, 1, j)) + &(a(1, 2, i, 2) * a(1, 2, 2, j))))
                + &(p12 * &(&(a(2, 2, i, 1) * a(1, 2, 1, j)) + &(a(2, 2, i, 2) * a(1, 2, 2, j))));
            &lhs - &rhs
        }
        _ => unreachable!("constraint schema index"),
    }
}

/// Evaluates the six constraint schemas at every (i,j), exactly as the
/// printed sums of products, plus `det Sigma != 0`.
pub fn check_system_c(d: &DEData) -> SystemCReport {
    let mut violations = Vec::new();
    for k in 1..=6 {
        for i in 1..=2 {
            for j in 1..=2 {
                if !constraint_residual(d, k, i, j).is_zero() {
                    violations.push(format!("C{k}.{i}{j}"));
                }
            }
        }
    }
    SystemCReport {
        violations,
        det_sigma_nonzero: !d.sigma.det(&d.field).is_zero(),
    }
}

/// Allocation-free verdict with early exit, for bulk scans.
pub fn passes_system_c(d: &DEData) -> bool {
    for k in 1..=6 {
        for i in 1..=2 {
            for j in 1..=2 {
                if !constraint_residual(d, k, i, j).is_zero() {
                    return false;
                }
            }
        }
    }
    !d.sigma.det(&d.field).is_zero()
}

/// Cross-validation of the C4-C6 family by a different route: the three
/// composite-map relations are evaluated on `x_1, x_2` through composed 2x2
/// coefficient matrices instead of the printed per-entry sums. Violation
/// identifiers `R3.k.ij` line up with `C(k+3).ij` of `check_system_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct R3Report {
    pub violations: Vec<String>,
}

impl R3Report {
    pub fn satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_r3_trimmed(d: &DEData) -> R3Report {
    let s11 = d.sigma.block(1, 1);
    let s12 = d.sigma.block(1, 2);
    let s21 = d.sigma.block(2, 1);
    let s22 = d.sigma.block(2, 2);
    let p12 = &d.p.skew;
    let p11 = &d.p.square;
    // composite sigma_fg . sigma_st has coordinate matrix S_st * S_fg
    let comp = |inner: &Mat2, outer: &Mat2| mat2_mul(inner, outer);

    let mut violations = Vec::new();
    let mut check = |k: usize, lhs: Mat2, rhs: Mat2| {
        for i in 0..2 {
            for j in 0..2 {
                if lhs[i][j] != rhs[i][j] {
                    violations.push(format!("R3.{}.{}{}", k, i + 1, j + 1));
                }
            }
        }
    };

    // sigma21.sigma11 + p11 sigma22.sigma11
    //   = p11 sigma11.sigma11 + p11^2 sigma12.sigma11
    //     + p12 sigma11.sigma21 + p11 p12 sigma12.sigma21
    let lhs = mat2_add(&comp(&s11, &s21), &mat2_scale(&comp(&s11, &s22), p11));
    let rhs = mat2_add(
        &mat2_add(
            &mat2_scale(&comp(&s11, &s11), p11),
            &mat2_scale(&comp(&s11, &s12), &(p11 * p11)),
        ),
        &mat2_add(
            &mat2_scale(&comp(&s21, &s11), p12),
            &mat2_scale(&comp(&s21, &s12), &(p11 * p12)),
        ),
    );
    check(1, lhs, rhs);

    // sigma21.sigma12 + p12 sigma22.sigma11
    //   = p11 sigma11.sigma12 + p11 p12 sigma12.sigma11
    //     + p12 sigma11.sigma22 + p12^2 sigma12.sigma21
    let lhs = mat2_add(&comp(&s12, &s21), &mat2_scale(&comp(&s11, &s22), p12));
    let rhs = mat2_add(
        &mat2_add(
            &mat2_scale(&comp(&s12, &s11), p11),
            &mat2_scale(&comp(&s11, &s12), &(p11 * p12)),
        ),
        &mat2_add(
            &mat2_scale(&comp(&s22, &s11), p12),
            &mat2_scale(&comp(&s21, &s12), &(p12 * p12)),
        ),
    );
    check(2, lhs, rhs);

    // sigma22.sigma12 = p11 sigma12.sigma12 + p12 sigma12.sigma22
    let lhs = comp(&s12, &s22);
    let rhs = mat2_add(
        &mat2_scale(&comp(&s12, &s12), p11),
        &mat2_scale(&comp(&s22, &s12), p12),
    );
    check(3, lhs, rhs);

    R3Report { violations }
}

/// Degree-1 coordinate matrix of the determinant automorphism
/// `-p11 sigma12.sigma11 + sigma22.sigma11 - p12 sigma12.sigma21`, presented
/// in the column convention `det sigma (x1; x2)^T = D (x1; x2)^T`.
pub fn det_sigma(d: &DEData) -> Mat2 {
    let s11 = d.sigma.block(1, 1);
    let s12 = d.sigma.block(1, 2);
    let s21 = d.sigma.block(2, 1);
    let s22 = d.sigma.block(2, 2);
    let term1 = mat2_scale(&mat2_mul(&s11, &s12), &d.p.square.neg());
    let term2 = mat2_mul(&s11, &s22);
    let term3 = mat2_scale(&mat2_mul(&s21, &s12), &d.p.skew.neg());
    mat2_add(&mat2_add(&term1, &term2), &term3)
}

/// The block re-arrangement of `Sigma`.
pub fn m_matrix(d: &DEData) -> MMatrix {
    let mut rows: [[Scalar; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| Scalar::rat_i64(0)));
    for i in 0..2 {
        for j in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    rows[2 * s + i][2 * t + j] = d.sigma.rows[2 * i + s][2 * j + t].clone();
                }
            }
        }
    }
    MMatrix { rows }
}

/// Iterated-Ore reducibility flags. Any true flag certifies that the
/// presentation is an iterated Ore extension (of the x-side base for the
/// Sigma flags, of the y-side base for the M flags).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OreFlags {
    pub sigma12_zero: bool,
    pub sigma21_zero_and_p11_zero: bool,
    pub m12_zero: bool,
    pub m21_zero_and_q11_zero: bool,
}

impl OreFlags {
    pub fn any(&self) -> bool {
        self.sigma12_zero
            || self.sigma21_zero_and_p11_zero
            || self.m12_zero
            || self.m21_zero_and_q11_zero
    }
}

impl fmt::Display for OreFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut hits = Vec::new();
        if self.sigma12_zero {
            hits.push("Sigma12=0");
        }
        if self.sigma21_zero_and_p11_zero {
            hits.push("Sigma21=0 & p11=0");
        }
        if self.m12_zero {
            hits.push("M12=0");
        }
        if self.m21_zero_and_q11_zero {
            hits.push("M21=0 & q11=0");
        }
        if hits.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{}", hits.join(", "))
        }
    }
}

pub fn ore_flags(d: &DEData) -> OreFlags {
    let m = m_matrix(d);
    OreFlags {
        sigma12_zero: d.sigma.block_is_zero(1, 2),
        sigma21_zero_and_p11_zero: d.sigma.block_is_zero(2, 1) && d.p.square.is_zero(),
        m12_zero: m.block_is_zero(1, 2),
        m21_zero_and_q11_zero: m.block_is_zero(2, 1) && d.q.square.is_zero(),
    }
}

/// The opposite-ring presentation with the generator roles swapped:
/// `Sigma' = M`, `Q' = P-circ`, `P' = Q-circ`. Applying it twice returns the
/// original data.
pub fn dual_data(d: &DEData) -> Result<DEData, DextError> {
    DEData::new(
        d.field.clone(),
        d.p.circ()?,
        d.q.circ()?,
        SigmaMatrix::from_rows(m_matrix(d).rows().clone()),
    )
}

/// Scales `Sigma` by a nonzero twist scalar; `P`, `Q` are untouched.
pub fn apply_twist(d: &DEData, h: &Scalar) -> Result<DEData, DextError> {
    if h.is_zero() {
        return Err(DextError::TwistByZero);
    }
    let h = d.field.promote(h.clone())?;
    Ok(DEData {
        field: d.field.clone(),
        q: d.q.clone(),
        p: d.p.clone(),
        sigma: d.sigma.scale(&h),
    })
}

/// Substitutes `images[g]` for each generator letter of `p`.
pub fn substitute(p: &NcPoly, images: &[NcPoly; 4]) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        let mut prod = NcPoly::constant(c.clone());
        for g in &w.0 {
            prod = &prod * &images[g.index()];
        }
        out = &out + &prod;
    }
    out
}

/// Images sending the x-letters through `cx` and the y-letters through `cy`:
/// letter `v` maps to `sum_u m[v][u] * letter_u` on its own side.
pub fn gen_images(cx: &Mat2, cy: &Mat2) -> [NcPoly; 4] {
    let lin = |c0: &Scalar, g0: Gen, c1: &Scalar, g1: Gen| {
        let mut p = NcPoly::monomial(c0.clone(), Word::single(g0));
        p.add_term(Word::single(g1), c1.clone());
        p
    };
    [
        lin(&cx[0][0], Gen::X1, &cx[0][1], Gen::X2),
        lin(&cx[1][0], Gen::X1, &cx[1][1], Gen::X2),
        lin(&cy[0][0], Gen::Y1, &cy[0][1], Gen::Y2),
        lin(&cy[1][0], Gen::Y1, &cy[1][1], Gen::Y2),
    ]
}

/// Renormalizes a transformed quadratic relation on the pair `(g1, g2)` to
/// the two-parameter form `g2 g1 = skew g1 g2 + square g1^2`.
fn renormalize_pair(
    rel: &NcPoly,
    g1: Gen,
    g2: Gen,
    side: &'static str,
) -> Result<ParamPair, DextError> {
    let w21 = Word::of(&[g2, g1]);
    let w12 = Word::of(&[g1, g2]);
    let w11 = Word::of(&[g1, g1]);
    let w22 = Word::of(&[g2, g2]);
    if rel.coeff(&w22).is_some() {
        return Err(DextError::NotNormalizable(
            side,
            format!("nonzero {}^2 coefficient in `{rel}`", g2.name()),
        ));
    }
    let lead = rel
        .coeff(&w21)
        .cloned()
        .ok_or_else(|| DextError::NotNormalizable(side, format!("no {w21} term in `{rel}`")))?;
    let inv = lead.inv().expect("nonzero leading coefficient");
    let skew = rel
        .coeff(&w12)
        .map(|c| (c * &inv).neg())
        .unwrap_or_else(|| Scalar::rat_i64(0));
    let square = rel
        .coeff(&w11)
        .map(|c| (c * &inv).neg())
        .unwrap_or_else(|| Scalar::rat_i64(0));
    Ok(ParamPair { skew, square })
}

/// The parameter pair induced on one non-mixing relation by a basis change
/// of its own letter pair (the x-side relation when `x_side`, else the
/// y-side one), without touching the coefficient matrix.
pub fn transform_params(rel: &NcPoly, b: &Mat2, x_side: bool) -> Result<ParamPair, DextError> {
    let b_inv = mat2_inv(b)?;
    let id = mat2_from_i64([[1, 0], [0, 1]]);
    let images = if x_side {
        gen_images(&b_inv, &id)
    } else {
        gen_images(&id, &b_inv)
    };
    let (g1, g2, side) = if x_side {
        (Gen::X1, Gen::X2, "Q")
    } else {
        (Gen::Y1, Gen::Y2, "P")
    };
    renormalize_pair(&substitute(rel, &images), g1, g2, side)
}

/// Change of generators `X' = Bx X`, `Y' = By Y`: conjugates the x-indices
/// of `Sigma` by `Bx` and the y-indices by `By`, and re-derives the induced
/// `(Q', P')` by rewriting the two non-mixing relations in the new basis.
/// Fails when a transformed relation leaves the two-parameter normal form.
pub fn transform_xy(d: &DEData, bx: &Mat2, by: &Mat2) -> Result<DEData, DextError> {
    let promote2 = |m: &Mat2| -> Result<Mat2, DextError> {
        let mut out: Mat2 = std::array::from_fn(|_| std::array::from_fn(|_| d.field.zero()));
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = d.field.promote(m[i][j].clone())?;
            }
        }
        Ok(out)
    };
    let bx = promote2(bx)?;
    let by = promote2(by)?;
    let bx_inv = mat2_inv(&bx)?;
    let by_inv = mat2_inv(&by)?;

    // a'_{im su} = sum_{k,j,l,t} By[i][k] Bx[s][l] a_{kjlt} BxInv[t][u] ByInv[j][m]
    let mut rows: [[Scalar; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| d.field.zero()));
    for i in 0..2 {
        for m in 0..2 {
            for s in 0..2 {
                for u in 0..2 {
                    let mut acc = d.field.zero();
                    for k in 0..2 {
                        for j in 0..2 {
                            for l in 0..2 {
                                for t in 0..2 {
                                    let term = &(&(&by[i][k] * &bx[s][l])
                                        * d.sigma.a(k + 1, j + 1, l + 1, t + 1))
                                        * &(&bx_inv[t][u] * &by_inv[j][m]);
                                    acc = &acc + &term;
                                }
                            }
                        }
                    }
                    rows[2 * i + s][2 * m + u] = acc;
                }
            }
        }
    }

    // old letters expand along the inverse matrices: x_v = sum_u BxInv[v][u] x'_u
    let old_in_new = gen_images(&bx_inv, &by_inv);
    let rels = synth_relations(d);
    let new_q = renormalize_pair(&substitute(&rels[0], &old_in_new), Gen::X1, Gen::X2, "Q")?;
    let new_p = renormalize_pair(&substitute(&rels[1], &old_in_new), Gen::Y1, Gen::Y2, "P")?;

    DEData::new(d.field.clone(), new_q, new_p, SigmaMatrix { rows })
}

/// True iff `apply_twist(transform_xy(d, bx, by), h)` is component-wise
/// identical to `d2`; this is what certifies the catalog's duality claims.
pub fn verify_equivalence_witness(
    d: &DEData,
    d2: &DEData,
    bx: &Mat2,
    by: &Mat2,
    h: &Scalar,
) -> Result<bool, DextError> {
    let t = apply_twist(&transform_xy(d, bx, by)?, h)?;
    Ok(t.field == d2.field && t.q == d2.q && t.p == d2.p && t.sigma == d2.sigma)
}

/// Bounded search for an equivalence witness: tries every candidate pair,
/// solving for the twist scalar by entry ratio. Returns the first witness
/// in candidate order.
pub fn search_witness(
    d: &DEData,
    d2: &DEData,
    bx_candidates: &[Mat2],
    by_candidates: &[Mat2],
) -> Option<(Mat2, Mat2, Scalar)> {
    for bx in bx_candidates {
        for by in by_candidates {
            let Ok(t) = transform_xy(d, bx, by) else {
                continue;
            };
            if t.q != d2.q || t.p != d2.p {
                continue;
            }
            let mut h: Option<Scalar> = None;
            for r in 0..4 {
                for c in 0..4 {
                    if !t.sigma.rows()[r][c].is_zero() {
                        h = Some(
                            &d2.sigma.rows()[r][c] * &t.sigma.rows()[r][c].inv().expect("nonzero"),
                        );
                        break;
                    }
                }
                if h.is_some() {
                    break;
                }
            }
            let Some(h) = h else { continue };
            if h.is_zero() {
                continue;
            }
            if t.sigma.scale(&h) == d2.sigma {
                return Some((bx.clone(), by.clone(), h));
            }
        }
    }
    None
}

// ---- the .de file format ----

/// Writes DE-data in the text format: a field-spec line, `Q = (q12, q11)`,
/// `P = (p12, p11)`, then four rows of four scalars.
pub fn write_de(d: &DEData) -> String {
    let mut out = String::new();
    out.push_str(&format!("{}\n", d.field));
    out.push_str(&format!(
        "Q = ({}, {})\n",
        de_scalar(&d.q.skew),
        de_scalar(&d.q.square)
    ));
    out.push_str(&format!(
        "P = ({}, {})\n",
        de_scalar(&d.p.skew),
        de_scalar(&d.p.square)
    ));
    out.push_str(&d.sigma.to_string());
    out
}

/// Parses the `.de` format written by `write_de`. Lines starting with `#`
/// and blank lines are ignored.
pub fn parse_de(text: &str) -> Result<DEData, DextError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let field_line = lines
        .next()
        .ok_or_else(|| DextError::Parse("missing field-spec line".into()))?;
    let field = FieldSpec::parse(field_line)?;

    let mut pair = |name: &str| -> Result<ParamPair, DextError> {
        let line = lines
            .next()
            .ok_or_else(|| DextError::Parse(format!("missing {name} line")))?;
        let rest = line
            .strip_prefix(name)
            .and_then(|r| r.trim_start().strip_prefix('='))
            .ok_or_else(|| DextError::Parse(format!("expected `{name} = (a, b)`, got `{line}`")))?;
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| DextError::Parse(format!("expected parentheses in `{line}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| DextError::Parse(format!("expected two entries in `{line}`")))?;
        Ok(ParamPair {
            skew: field.parse_scalar(a)?,
            square: field.parse_scalar(b)?,
        })
    };
    let q = pair("Q")?;
    let p = pair("P")?;

    let mut rows: [[Scalar; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| field.zero()));
    for row in rows.iter_mut() {
        let line = lines
            .next()
            .ok_or_else(|| DextError::Parse("missing matrix row".into()))?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != 4 {
            return Err(DextError::Parse(format!(
                "expected 4 entries per row, got {} in `{line}`",
                cells.len()
            )));
        }
        for (slot, cell) in row.iter_mut().zip(cells) {
            *slot = field.parse_scalar(cell)?;
        }
    }
    DEData::new(field, q, p, SigmaMatrix { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::NcPoly;
    use rand::{Rng, SeedableRng};

    fn q_field() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn p(s: &str) -> NcPoly {
        NcPoly::parse(&q_field(), s).unwrap()
    }

    /// The first catalog family: P=(1,1), Q=(1,0), unit twist.
    fn family_a_data() -> DEData {
        DEData::new(
            q_field(),
            ParamPair::of_i64(1, 0),
            ParamPair::of_i64(1, 1),
            SigmaMatrix::from_i64_rows([
                [1, 0, 0, 0],
                [0, 1, 1, 0],
                [0, 0, 1, 0],
                [0, -2, -1, 1],
            ]),
        )
        .unwrap()
    }

    fn identity_data() -> DEData {
        DEData::new(
            q_field(),
            ParamPair::of_i64(1, 0),
            ParamPair::of_i64(1, 0),
            SigmaMatrix::from_i64_rows([
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ]),
        )
        .unwrap()
    }

    #[test]
    fn family_a_relations_match_the_printed_six() {
        let rels = synth_relations(&family_a_data());
        let expected = [
            "x2*x1 - x1*x2",
            "y2*y1 - y1*y2 - y1^2",
            "y1*x1 - x1*y1",
            "y1*x2 - x2*y1 - x1*y2",
            "y2*x1 - x1*y2",
            "y2*x2 + 2*x2*y1 + x1*y2 - x2*y2",
        ];
        assert_eq!(rels.len(), 6);
        for (rel, want) in rels.iter().zip(expected) {
            assert_eq!(rel, &p(want));
        }
    }

    #[test]
    fn identity_sigma_gives_the_commutative_ring() {
        let rels = synth_relations(&identity_data());
        let expected = [
            "x2*x1 - x1*x2",
            "y2*y1 - y1*y2",
            "y1*x1 - x1*y1",
            "y1*x2 - x2*y1",
            "y2*x1 - x1*y2",
            "y2*x2 - x2*y2",
        ];
        for (rel, want) in rels.iter().zip(expected) {
            assert_eq!(rel, &p(want));
        }
        assert!(check_system_c(&identity_data()).is_c_solution());
    }

    #[test]
    fn family_a_is_a_c_solution_and_perturbation_breaks_it() {
        assert!(check_system_c(&family_a_data()).is_c_solution());

        // flip a_2122 from -2 to -1
        let mut rows = family_a_data().sigma.rows().clone();
        rows[3][1] = Scalar::rat_i64(-1);
        let perturbed = DEData::new(
            q_field(),
            ParamPair::of_i64(1, 0),
            ParamPair::of_i64(1, 1),
            SigmaMatrix::from_rows(rows),
        )
        .unwrap();
        let report = check_system_c(&perturbed);
        assert!(!report.is_c_solution());
        assert!(!report.violations.is_empty());
        // the same verdict must come out of the composed-matrix route
        let r3 = check_r3_trimmed(&perturbed);
        let c456 = report
            .violations
            .iter()
            .any(|v| v.starts_with("C4") || v.starts_with("C5") || v.starts_with("C6"));
        assert_eq!(c456, !r3.satisfied());
    }

    #[test]
    fn r3_matches_c456_on_random_matrices_over_gf11() {
        let f = FieldSpec::prime_field(11).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..500 {
            let rows: [[Scalar; 4]; 4] =
                std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
            let p12 = loop {
                let c = f.random(&mut rng);
                if !c.is_zero() {
                    break c;
                }
            };
            let q12 = loop {
                let c = f.random(&mut rng);
                if !c.is_zero() {
                    break c;
                }
            };
            let d = DEData::new(
                f.clone(),
                ParamPair::new(q12, f.random(&mut rng)),
                ParamPair::new(p12, f.random(&mut rng)),
                SigmaMatrix::from_rows(rows),
            )
            .unwrap();
            let c_report = check_system_c(&d);
            let r3 = check_r3_trimmed(&d);
            for k in 1..=3 {
                for i in 1..=2 {
                    for j in 1..=2 {
                        let c_hit = c_report
                            .violations
                            .contains(&format!("C{}.{}{}", k + 3, i, j));
                        let r_hit = r3.violations.contains(&format!("R3.{k}.{i}{j}"));
                        assert_eq!(c_hit, r_hit, "mismatch at k={k} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn det_sigma_of_family_a_is_the_identity() {
        let d = det_sigma(&family_a_data());
        assert_eq!(d, mat2_from_i64([[1, 0], [0, 1]]));
    }

    #[test]
    fn det_sigma_of_family_c() {
        // the family with p^2 + p + 1 = 0, at unit twist
        let f = FieldSpec::eisenstein();
        let a = f.generator().unwrap();
        let a2 = &a * &a;
        let one = f.one();
        let rows = [
            [one.neg(), a2.clone(), one.clone(), a.neg()],
            [a.neg(), one.clone(), one.clone(), a.neg()],
            [a.neg(), &Scalar::rat_i64(-2) * &a2, a.clone(), a.neg()],
            [a.neg(), a2.clone(), one.clone(), one.neg()],
        ];
        let d = DEData::new(
            f.clone(),
            ParamPair::new(a.clone(), f.zero()),
            ParamPair::new(a.clone(), f.zero()),
            SigmaMatrix::from_rows(rows),
        )
        .unwrap();
        assert!(check_system_c(&d).is_c_solution());
        let det = det_sigma(&d);
        let minus3 = Scalar::rat_i64(-3);
        let expect = [[&minus3 * &a, f.zero()], [f.zero(), minus3.clone()]];
        assert_eq!(det, expect);
    }

    #[test]
    fn m_matrix_of_family_a_matches_the_printed_rearrangement() {
        let m = m_matrix(&family_a_data());
        let want = MMatrix::from_i64_rows([
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 1, 1, 0],
            [0, -1, -2, 1],
        ]);
        assert_eq!(m, want);
        // involution
        assert_eq!(m.to_sigma(), family_a_data().sigma);
        // identity maps to identity
        assert_eq!(
            m_matrix(&identity_data()).rows(),
            identity_data().sigma.rows()
        );
    }

    #[test]
    fn ore_flags_on_the_catalog_shapes() {
        // first family: M12 = 0
        let flags = ore_flags(&family_a_data());
        assert!(flags.m12_zero);
        assert!(!flags.sigma12_zero);

        // lower-triangular solution from the first subcase: Sigma12 = 0
        let d = DEData::new(
            q_field(),
            ParamPair::of_i64(1, 1),
            ParamPair::of_i64(1, 1),
            SigmaMatrix::from_i64_rows([
                [2, 0, 0, 0],
                [3, 2, 0, 0],
                [5, 0, 2, 0],
                [7, 5, 3, 2],
            ]),
        )
        .unwrap();
        assert!(ore_flags(&d).sigma12_zero);
    }

    #[test]
    fn param_circ_fixes_the_commutative_pair() {
        let pr = ParamPair::of_i64(1, 0);
        assert_eq!(pr.circ().unwrap(), pr);
        let pr = ParamPair::of_i64(2, 3);
        let c = pr.circ().unwrap();
        assert_eq!(c.skew, q_field().from_ratio(1, 2));
        assert_eq!(c.square, q_field().from_ratio(-3, 2));
        // circ is an involution
        assert_eq!(c.circ().unwrap(), pr);
    }

    #[test]
    fn dual_of_dual_is_the_original() {
        let d = family_a_data();
        let dd = dual_data(&dual_data(&d).unwrap()).unwrap();
        assert_eq!(dd, d);
        let rels: Vec<String> = synth_relations(&dd).iter().map(|r| r.to_string()).collect();
        let orig: Vec<String> = synth_relations(&d).iter().map(|r| r.to_string()).collect();
        assert_eq!(rels, orig);
    }

    #[test]
    fn twist_scales_sigma_and_preserves_solutions() {
        let d = family_a_data();
        let five = Scalar::rat_i64(5);
        let t = apply_twist(&d, &five).unwrap();
        assert!(check_system_c(&t).is_c_solution());
        assert_eq!(t.q, d.q);
        assert_eq!(t.p, d.p);
        // h = 1 is the identity
        assert_eq!(apply_twist(&d, &Scalar::rat_i64(1)).unwrap(), d);
        // det of the 4x4 matrix scales by h^4
        let before = d.sigma.det(&d.field);
        let after = t.sigma.det(&t.field);
        assert_eq!(after, &before * &Scalar::rat_i64(625));
        assert!(matches!(
            apply_twist(&d, &Scalar::rat_i64(0)),
            Err(DextError::TwistByZero)
        ));
    }

    #[test]
    fn twist_preserves_solution_status_on_random_pairs() {
        let f = FieldSpec::prime_field(11).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let rows: [[Scalar; 4]; 4] =
                std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
            let d = DEData::new(
                f.clone(),
                ParamPair::new(f.from_i64(1), f.zero()),
                ParamPair::new(f.from_i64(1 + rng.gen_range(0..10)), f.random(&mut rng)),
                SigmaMatrix::from_rows(rows),
            )
            .unwrap();
            let h = loop {
                let c = f.random(&mut rng);
                if !c.is_zero() {
                    break c;
                }
            };
            let t = apply_twist(&d, &h).unwrap();
            assert_eq!(
                check_system_c(&d).is_c_solution(),
                check_system_c(&t).is_c_solution()
            );
            assert_eq!(ore_flags(&d), ore_flags(&t));
        }
    }

    #[test]
    fn identity_transform_is_a_no_op() {
        let d = family_a_data();
        let id = mat2_from_i64([[1, 0], [0, 1]]);
        assert_eq!(transform_xy(&d, &id, &id).unwrap(), d);
    }

    #[test]
    fn y_shear_matches_the_published_reduction() {
        // the intermediate matrix of the last subcase of the first case,
        // with parameters g, m; shearing y by (1 0; g 1) must send m to
        // m + g + g^2 and clear the g entry
        let g = 3i64;
        let m = 5i64;
        let d = DEData::new(
            q_field(),
            ParamPair::of_i64(1, 0),
            ParamPair::of_i64(1, 1),
            SigmaMatrix::from_i64_rows([
                [1, 0, 0, 0],
                [g, 1, 1, 0],
                [0, 0, 1, 0],
                [m, -2, -g - 1, 1],
            ]),
        )
        .unwrap();
        assert!(check_system_c(&d).is_c_solution());
        let by = mat2_from_i64([[1, 0], [g, 1]]);
        let id = mat2_from_i64([[1, 0], [0, 1]]);
        let t = transform_xy(&d, &id, &by).unwrap();
        let m_new = m + g + g * g;
        let want_m = MMatrix::from_i64_rows([
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 1, 1, 0],
            [m_new, -1, -2, 1],
        ]);
        assert_eq!(m_matrix(&t), want_m);
        assert_eq!(t.p, ParamPair::of_i64(1, 1));
        assert_eq!(t.q, ParamPair::of_i64(1, 0));
    }

    #[test]
    fn transform_rejects_basis_changes_that_break_the_normal_form() {
        let d = DEData::new(
            q_field(),
            ParamPair::of_i64(5, 0),
            ParamPair::of_i64(1, 0),
            SigmaMatrix::from_i64_rows([
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ]),
        )
        .unwrap();
        let bx = mat2_from_i64([[1, 1], [0, 1]]);
        let id = mat2_from_i64([[1, 0], [0, 1]]);
        assert!(matches!(
            transform_xy(&d, &bx, &id),
            Err(DextError::NotNormalizable("Q", _))
        ));
        let singular = mat2_from_i64([[1, 1], [1, 1]]);
        assert!(matches!(
            transform_xy(&d, &singular, &id),
            Err(DextError::SingularTransform)
        ));
    }

    #[test]
    fn transformed_relations_span_the_rewritten_ideal() {
        use crate::linalg::{dense_to_sparse, RowSpace};
        use crate::ncgb::all_words;
        let d = family_a_data();
        let bx = mat2_from_i64([[1, 0], [2, 1]]);
        let by = mat2_from_i64([[1, 0], [1, 1]]);
        let t = transform_xy(&d, &bx, &by).unwrap();

        // substitute the primed generators (Bx X, By Y) into the new
        // relations; the results must span the old degree-2 relation space
        let images = gen_images(&bx, &by);
        let words = all_words(2, crate::ncgb::full_alphabet());
        let to_row = |poly: &NcPoly| dense_to_sparse(&poly.coeff_vector(&words));
        let mut old_span = RowSpace::new();
        for r in synth_relations(&d) {
            old_span.insert(to_row(&r));
        }
        assert_eq!(old_span.rank(), 6);
        for r in synth_relations(&t) {
            let rewritten = substitute(&r, &images);
            assert!(
                old_span.contains(to_row(&rewritten)),
                "relation {r} does not rewrite into the old ideal"
            );
        }
    }

    #[test]
    fn witness_verification_accepts_the_identity() {
        let d = family_a_data();
        let id = mat2_from_i64([[1, 0], [0, 1]]);
        assert!(verify_equivalence_witness(&d, &d, &id, &id, &Scalar::rat_i64(1)).unwrap());
        let t = apply_twist(&d, &Scalar::rat_i64(7)).unwrap();
        assert!(verify_equivalence_witness(&d, &t, &id, &id, &Scalar::rat_i64(7)).unwrap());
        assert!(!verify_equivalence_witness(&d, &t, &id, &id, &Scalar::rat_i64(2)).unwrap());
    }

    #[test]
    fn de_file_round_trip() {
        let d = family_a_data();
        let text = write_de(&d);
        let parsed = parse_de(&text).unwrap();
        assert_eq!(parsed, d);
        assert_eq!(write_de(&parsed), text);

        // a quadratic-extension example with comments
        let f = FieldSpec::gaussian();
        let a = f.generator().unwrap();
        let d2 = DEData::new(
            f,
            ParamPair::new(a.clone(), Scalar::rat_i64(0)),
            ParamPair::new(a.clone(), Scalar::rat_i64(0)),
            SigmaMatrix::from_i64_rows([
                [0, 0, 0, 1],
                [0, 0, 1, 0],
                [0, -1, 0, 0],
                [1, 0, 0, 0],
            ]),
        )
        .unwrap();
        let mut text = String::from("# gaussian example\n");
        text.push_str(&write_de(&d2));
        assert_eq!(parse_de(&text).unwrap(), d2);
    }

    #[test]
    fn zero_skew_is_rejected() {
        let r = DEData::new(
            q_field(),
            ParamPair::of_i64(0, 1),
            ParamPair::of_i64(1, 0),
            SigmaMatrix::from_i64_rows([
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ]),
        );
        assert!(matches!(r, Err(DextError::ZeroSkew("Q"))));
    }
}
