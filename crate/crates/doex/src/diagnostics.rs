//! Structural diagnostics on a synthesized presentation: the Hilbert and
//! resolution-type checks, the quadratic dual and its dimension signature,
//! the resolution matrices with their row/column conditions, and
//! normalizing-element verification relative to a chosen subspace.

use crate::freealg::{Gen, NcPoly, Word};
use crate::linalg;
use crate::ncgb::{self, NcgbError, RewriteSystem};
use crate::scalar::{FieldSpec, Scalar};
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagnosticsError {
    #[error("presentation is not quadratic: relation `{0}` has degree {1}")]
    NotQuadratic(String, usize),
    #[error("kernel of the syzygy system has dimension {got}, expected 4")]
    BadKernel { got: usize },
    #[error("left kernel of the third matrix has dimension {got}, expected 1")]
    BadLeftKernel { got: usize },
    #[error(transparent)]
    Ncgb(#[from] NcgbError),
}

/// Expected graded dimension of a presentation with the free resolution of
/// ranks 1, 4, 6, 4, 1: the binomial coefficient `C(n+3, 3)`.
pub fn expected_dim(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// Report of the Hilbert-type check: graded dimensions must match the
/// degree-four series, the relation space must have dimension exactly 6 in
/// degree 2, and there must be no relations in degree 1.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Type14641Report {
    pub dims: Vec<usize>,
    pub degree_failures: Vec<usize>,
    pub relation_rank_deg2: usize,
    pub has_degree_one_relations: bool,
}

impl Type14641Report {
    pub fn passed(&self) -> bool {
        self.degree_failures.is_empty()
            && self.relation_rank_deg2 == 6
            && !self.has_degree_one_relations
    }
}

pub fn check_type_14641(
    relations: &[NcPoly],
    rs: &RewriteSystem,
    n: usize,
) -> Result<Type14641Report, DiagnosticsError> {
    let gens = ncgb::full_alphabet();
    let dims = rs.graded_dims(n, gens)?.0;
    let degree_failures = dims
        .iter()
        .enumerate()
        .filter(|&(k, &d)| d != expected_dim(k))
        .map(|(k, _)| k)
        .collect();
    let has_degree_one_relations = relations.iter().any(|r| r.degree() == Some(1));
    let relation_rank_deg2 = ncgb::relation_space_rank(relations, 2, gens);
    Ok(Type14641Report {
        dims,
        degree_failures,
        relation_rank_deg2,
        has_degree_one_relations,
    })
}

/// Dimensions of the quadratic dual plus the numerical duality identity.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KoszulReport {
    pub dual_dims: Vec<usize>,
    /// `sum_m (-1)^m dim(dual_m) dim(B_{n-m}) = 0` for `1 <= n <= N`.
    pub euler_identity_holds: bool,
}

/// Builds the annihilator of the degree-2 relation space under the pairing
/// `<u* (x) v*, a (x) b> = u*(a) v*(b)`, completes the dual presentation on
/// the dual generators, and returns its graded dimensions.
pub fn koszul_dual_dims(
    relations: &[NcPoly],
    n: usize,
    field: &FieldSpec,
    gens: &[Gen],
) -> Result<KoszulReport, DiagnosticsError> {
    for r in relations {
        match r.degree() {
            Some(2) => {}
            Some(d) => return Err(DiagnosticsError::NotQuadratic(r.to_string(), d)),
            None => return Err(DiagnosticsError::Ncgb(NcgbError::ZeroRelation)),
        }
    }
    let words = ncgb::all_words(2, gens);
    let rows: Vec<Vec<Scalar>> = relations.iter().map(|r| r.coeff_vector(&words)).collect();
    let annihilator = linalg::nullspace(&rows, words.len(), field);
    let dual_relations: Vec<NcPoly> = annihilator
        .iter()
        .map(|v| {
            let mut p = NcPoly::zero();
            for (w, c) in words.iter().zip(v) {
                p.add_term(w.clone(), c.clone());
            }
            p
        })
        .collect();
    let dual_rs = ncgb::complete(&dual_relations, n, field)?;
    let dual_dims = dual_rs.graded_dims(n, gens)?.0;

    let rs = ncgb::complete(relations, n, field)?;
    let dims = rs.graded_dims(n, gens)?.0;
    let euler_identity_holds = (1..=n).all(|k| {
        let mut acc: i64 = 0;
        for m in 0..=k {
            let term = (dual_dims.get(m).copied().unwrap_or(0) * dims[k - m]) as i64;
            acc += if m % 2 == 0 { term } else { -term };
        }
        acc == 0
    });
    Ok(KoszulReport {
        dual_dims,
        euler_identity_holds,
    })
}

/// The matrices of the middle of the rank-(1,4,6,4,1) resolution: `F` whose
/// rows rebuild the relations with generator factors collected on the
/// right, a canonical basis `G` of the row space annihilating `F` modulo
/// the ideal, and the degree-1 left kernel vector of `G`.
#[derive(Clone, Debug)]
pub struct ResolutionPair {
    pub f_rows: Vec<Vec<NcPoly>>,
    pub g_rows: Vec<Vec<NcPoly>>,
    pub xprime: Vec<NcPoly>,
}

pub fn resolution_matrices(
    relations: &[NcPoly],
    rs: &RewriteSystem,
) -> Result<ResolutionPair, DiagnosticsError> {
    let gens = ncgb::full_alphabet();
    let field = rs.field().clone();
    for r in relations {
        match r.degree() {
            Some(2) => {}
            Some(d) => return Err(DiagnosticsError::NotQuadratic(r.to_string(), d)),
            None => return Err(DiagnosticsError::Ncgb(NcgbError::ZeroRelation)),
        }
    }
    // F[i][j] = sum_a coeff of the word (a, gen_j) in relation i, times a
    let f_rows: Vec<Vec<NcPoly>> = relations
        .iter()
        .map(|r| {
            gens.iter()
                .map(|&gj| {
                    let mut entry = NcPoly::zero();
                    for &a in gens {
                        if let Some(c) = r.coeff(&Word::of(&[a, gj])) {
                            entry.add_term(Word::single(a), c.clone());
                        }
                    }
                    entry
                })
                .collect()
        })
        .collect();

    // normal words of degree 2 index the residue coordinates
    let nf_words = rs.normal_words(2, gens)?;
    let nf_index: std::collections::HashMap<&[Gen], usize> = nf_words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.0.as_slice(), i))
        .collect();
    let nf_coords = |p: &NcPoly| -> Result<Vec<Scalar>, DiagnosticsError> {
        let nf = rs.normal_form(p)?;
        let mut v = vec![field.zero(); nf_words.len()];
        for (w, c) in nf.terms() {
            v[nf_index[w.0.as_slice()]] = c.clone();
        }
        Ok(v)
    };

    // rows g = (g_1..g_6) of degree-1 entries with g . F = 0 in degree 2;
    // unknown u[k][a] is the coefficient of generator a in g_k
    let k_rels = relations.len();
    let mut system: Vec<Vec<Scalar>> = Vec::new();
    let mut products = Vec::with_capacity(k_rels * 4 * 4);
    for k in 0..k_rels {
        for a in gens {
            let mut per_column = Vec::with_capacity(4);
            for j in 0..4 {
                let prod = NcPoly::gen(*a).mul(&f_rows[k][j]);
                per_column.push(nf_coords(&prod)?);
            }
            products.push(per_column);
        }
    }
    for j in 0..4 {
        for coord in 0..nf_words.len() {
            let row: Vec<Scalar> = (0..k_rels * 4)
                .map(|unknown| products[unknown][j][coord].clone())
                .collect();
            system.push(row);
        }
    }
    let kernel = linalg::nullspace(&system, k_rels * 4, &field);
    if kernel.len() != 4 {
        return Err(DiagnosticsError::BadKernel { got: kernel.len() });
    }
    let g_rows: Vec<Vec<NcPoly>> = kernel
        .iter()
        .map(|v| {
            (0..k_rels)
                .map(|k| {
                    let mut entry = NcPoly::zero();
                    for (ai, &a) in gens.iter().enumerate() {
                        entry.add_term(Word::single(a), v[4 * k + ai].clone());
                    }
                    entry
                })
                .collect()
        })
        .collect();

    // left kernel of G in degree 1: tuples (x'_1..x'_4) with x' . G = 0
    let mut products = Vec::with_capacity(16);
    for i in 0..4 {
        for a in gens {
            let mut per_column = Vec::with_capacity(k_rels);
            for j in 0..k_rels.min(6) {
                let prod = NcPoly::gen(*a).mul(&g_rows[i][j]);
                per_column.push(nf_coords(&prod)?);
            }
            products.push(per_column);
        }
    }
    let mut system: Vec<Vec<Scalar>> = Vec::new();
    for j in 0..k_rels.min(6) {
        for coord in 0..nf_words.len() {
            let row: Vec<Scalar> = (0..16)
                .map(|unknown| products[unknown][j][coord].clone())
                .collect();
            system.push(row);
        }
    }
    let left = linalg::nullspace(&system, 16, &field);
    if left.len() != 1 {
        return Err(DiagnosticsError::BadLeftKernel { got: left.len() });
    }
    let xprime: Vec<NcPoly> = (0..4)
        .map(|i| {
            let mut entry = NcPoly::zero();
            for (ai, &a) in gens.iter().enumerate() {
                entry.add_term(Word::single(a), left[0][4 * i + ai].clone());
            }
            entry
        })
        .collect();

    Ok(ResolutionPair {
        f_rows,
        g_rows,
        xprime,
    })
}

/// Row/column conditions on the resolution matrices: nothing vanishes,
/// random one-sided contractions stay nonzero, and every row and column
/// spans at least a 2-dimensional subspace of the degree-1 space.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpanConditionReport {
    pub failures: Vec<String>,
}

impl SpanConditionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn coeff_vec(p: &NcPoly, field: &FieldSpec) -> Vec<Scalar> {
    let mut v = vec![field.zero(); 4];
    for (w, c) in p.terms() {
        v[w.0[0].index()] = c.clone();
    }
    v
}

/// Dimension of the span of a list of degree-1 elements inside the 4-dim
/// degree-1 space.
pub fn span_dim(entries: &[NcPoly], field: &FieldSpec) -> usize {
    linalg::rank_of_sparse_rows(
        entries
            .iter()
            .map(|p| linalg::dense_to_sparse(&coeff_vec(p, field))),
    )
}

/// Checks the nonzero/row/column/span conditions on one matrix of degree-1
/// entries, labeling the failures with the matrix name.
pub fn check_span_conditions(
    matrix: &[Vec<NcPoly>],
    label: &str,
    field: &FieldSpec,
) -> SpanConditionReport {
    let mut failures = Vec::new();
    let nrows = matrix.len();
    let ncols = matrix.first().map_or(0, Vec::len);
    for (i, row) in matrix.iter().enumerate() {
        if row.iter().all(NcPoly::is_zero) {
            failures.push(format!("{label}: row {} is zero", i + 1));
        } else if span_dim(row, field) < 2 {
            failures.push(format!("{label}: row {} spans < 2 dimensions", i + 1));
        }
    }
    for j in 0..ncols {
        let col: Vec<NcPoly> = matrix.iter().map(|row| row[j].clone()).collect();
        if col.iter().all(|p| p.is_zero()) {
            failures.push(format!("{label}: column {} is zero", j + 1));
        } else if span_dim(&col, field) < 2 {
            failures.push(format!("{label}: column {} spans < 2 dimensions", j + 1));
        }
    }
    // random one-sided contractions: the matrix applied to a random nonzero
    // column (and a random nonzero row applied to the matrix) must not
    // vanish entirely
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
    for trial in 0..20 {
        let col_vec = random_nonzero_vector(&mut rng, ncols, field);
        let all_zero_right = matrix.iter().all(|row| {
            let mut acc = NcPoly::zero();
            for (c, p) in col_vec.iter().zip(row) {
                acc = &acc + &p.scale(c);
            }
            acc.is_zero()
        });
        if all_zero_right {
            failures.push(format!(
                "{label}: right contraction vanished on trial {trial}"
            ));
        }
        let row_vec = random_nonzero_vector(&mut rng, nrows, field);
        let all_zero_left = (0..ncols).all(|j| {
            let mut acc = NcPoly::zero();
            for (c, row) in row_vec.iter().zip(matrix) {
                acc = &acc + &row[j].scale(c);
            }
            acc.is_zero()
        });
        if all_zero_left {
            failures.push(format!(
                "{label}: left contraction vanished on trial {trial}"
            ));
        }
    }
    SpanConditionReport { failures }
}

fn random_nonzero_vector<R: Rng>(rng: &mut R, len: usize, field: &FieldSpec) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..len).map(|_| field.random(rng)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// Runs the span conditions on both resolution matrices.
pub fn check_lemma22(rp: &ResolutionPair, field: &FieldSpec) -> SpanConditionReport {
    let mut report = check_span_conditions(&rp.f_rows, "F", field);
    let g = check_span_conditions(&rp.g_rows, "G", field);
    report.failures.extend(g.failures);
    report
}

/// Result of a two-sided normality check of `z` against the span of `W`,
/// with the expressing coefficients as certificate.
#[derive(Clone, Debug)]
pub struct NormalizerCheck {
    pub holds: bool,
    /// For each `w` in `W`: coefficients of `NF(z w)` over `{NF(b_j z)}`,
    /// `b_j` a basis of the span of `W`.
    pub forward: Vec<Option<Vec<Scalar>>>,
    /// Same for `NF(w z)` over `{NF(z b_j)}`.
    pub backward: Vec<Option<Vec<Scalar>>>,
}

/// True iff `z * span(W) = span(W) * z` modulo the ideal, both inclusions
/// checked degree by degree through normal forms.
pub fn check_normalizer(
    rs: &RewriteSystem,
    z: &NcPoly,
    w_elems: &[NcPoly],
) -> Result<NormalizerCheck, NcgbError> {
    let field = rs.field().clone();
    let z_deg = z.degree().unwrap_or(0);
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    let mut holds = true;

    // basis of the span of the reduced W
    let mut basis: Vec<NcPoly> = Vec::new();
    {
        let mut space = linalg::RowSpace::new();
        for w in w_elems {
            let nf = rs.normal_form(w)?;
            if nf.is_zero() {
                continue;
            }
            let deg = nf.degree().unwrap();
            let words = ncgb::all_words(deg, ncgb::full_alphabet());
            if space.insert(linalg::dense_to_sparse(&nf.coeff_vector(&words))) {
                basis.push(nf);
            }
        }
    }

    for w in w_elems {
        let w_deg = w.degree().unwrap_or(0);
        let deg = z_deg + w_deg;
        let words = ncgb::all_words(deg, ncgb::full_alphabet());
        let lhs = rs.normal_form(&z.mul(w))?;
        let rhs_basis: Vec<Vec<Scalar>> = basis
            .iter()
            .filter(|b| b.degree() == Some(w_deg))
            .map(|b| {
                rs.normal_form(&b.mul(z))
                    .map(|p| p.coeff_vector(&words))
            })
            .collect::<Result<_, _>>()?;
        let coeffs = linalg::solve_in_span(&rhs_basis, &lhs.coeff_vector(&words), &field);
        if coeffs.is_none() {
            holds = false;
        }
        forward.push(coeffs);

        let lhs = rs.normal_form(&w.mul(z))?;
        let rhs_basis: Vec<Vec<Scalar>> = basis
            .iter()
            .filter(|b| b.degree() == Some(w_deg))
            .map(|b| {
                rs.normal_form(&z.mul(b))
                    .map(|p| p.coeff_vector(&words))
            })
            .collect::<Result<_, _>>()?;
        let coeffs = linalg::solve_in_span(&rhs_basis, &lhs.coeff_vector(&words), &field);
        if coeffs.is_none() {
            holds = false;
        }
        backward.push(coeffs);
    }

    Ok(NormalizerCheck {
        holds,
        forward,
        backward,
    })
}

/// Outcome of running every stored normal-element claim of one family.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct FamilyNormalsReport {
    pub claims: Vec<(String, bool)>,
    pub all_hold: bool,
}

pub fn verify_family_normals(
    name: char,
    pa: &crate::catalog::Params,
    field: &FieldSpec,
    rs: &RewriteSystem,
) -> Result<FamilyNormalsReport, crate::catalog::CatalogError> {
    let claims = crate::catalog::normal_claims(name, pa, field)?;
    let mut results = Vec::new();
    let mut all_hold = true;
    for claim in claims {
        let ok = match check_normalizer(rs, &claim.element, &claim.space.elements()) {
            Ok(c) => c.holds,
            Err(_) => false,
        };
        all_hold &= ok;
        results.push((claim.label, ok));
    }
    Ok(FamilyNormalsReport {
        claims: results,
        all_hold,
    })
}

/// Counts normal words of each even total degree `2n <= max_degree` with an
/// even number of x-letters, and compares with the count implied by the
/// degree-four series restricted to that grading:
/// `sum over even j of (j+1)(2n+1-j)`.
pub fn even_x_degree_dims(rs: &RewriteSystem, max_degree: usize) -> Result<Vec<(usize, usize, usize)>, NcgbError> {
    let mut out = Vec::new();
    for deg in (2..=max_degree).step_by(2) {
        let words = rs.normal_words(deg, ncgb::full_alphabet())?;
        let got = words.iter().filter(|w| w.x_degree() % 2 == 0).count();
        let want: usize = (0..=deg)
            .step_by(2)
            .map(|j| (j + 1) * (deg + 1 - j))
            .sum();
        out.push((deg, got, want));
    }
    Ok(out)
}
