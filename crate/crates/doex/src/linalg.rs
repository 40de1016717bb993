//! Exact linear algebra over a `FieldSpec`: a sparse row space for rank
//! counting (the ideal spans in the dimension oracle get large) and dense
//! reduced row echelon routines for the small kernel computations in the
//! diagnostics layer.

use crate::scalar::{FieldSpec, Scalar};

/// Sorted, duplicate-free list of (column, nonzero coefficient).
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn dense_to_sparse(row: &[Scalar]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `target -= c * source`, both sparse.
fn sparse_axpy(target: &SparseVec, c: &Scalar, source: &SparseVec) -> SparseVec {
    let mut out = SparseVec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        match (target.get(i), source.get(j)) {
            (Some((ti, tc)), Some((si, sc))) => {
                if ti < si {
                    out.push((*ti, tc.clone()));
                    i += 1;
                } else if si < ti {
                    out.push((*si, -&(c * sc)));
                    j += 1;
                } else {
                    let v = tc - &(c * sc);
                    if !v.is_zero() {
                        out.push((*ti, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ti, tc)), None) => {
                out.push((*ti, tc.clone()));
                i += 1;
            }
            (None, Some((si, sc))) => {
                out.push((*si, -&(c * sc)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental staircase of sparse rows, each monic at its pivot column.
#[derive(Default)]
pub struct RowSpace {
    pivots: std::collections::BTreeMap<usize, SparseVec>,
}

impl RowSpace {
    pub fn new() -> RowSpace {
        RowSpace::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current staircase.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        loop {
            let Some((col, coef)) = row.first().map(|(i, c)| (*i, c.clone())) else {
                return row;
            };
            match self.pivots.get(&col) {
                Some(pivot_row) => row = sparse_axpy(&row, &coef, pivot_row),
                None => return row,
            }
        }
    }

    /// Inserts `row` if independent of the space; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let row = self.reduce(row);
        match row.first() {
            None => false,
            Some((col, coef)) => {
                let inv = coef.inv().expect("nonzero pivot");
                let monic: SparseVec =
                    row.iter().map(|(i, c)| (*i, c * &inv)).collect();
                self.pivots.insert(*col, monic);
                true
            }
        }
    }

    pub fn contains(&self, row: SparseVec) -> bool {
        self.reduce(row).is_empty()
    }
}

pub fn rank_of_sparse_rows(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut space = RowSpace::new();
    for r in rows {
        space.insert(r);
    }
    space.rank()
}

/// Dense reduced row echelon form. Returns the nonzero rows and their pivot
/// columns; the output is canonical for a given row space.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in col..ncols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Canonical basis of the right nullspace `{ v : M v = 0 }`.
pub fn nullspace(matrix: &[Vec<Scalar>], ncols: usize, field: &FieldSpec) -> Vec<Vec<Scalar>> {
    let (rows, pivots) = rref(matrix.to_vec());
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Expresses `target` as a linear combination of `basis` rows, if possible.
/// Returns the coefficients in basis order.
pub fn solve_in_span(
    basis: &[Vec<Scalar>],
    target: &[Scalar],
    field: &FieldSpec,
) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return target.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let ncols = target.len();
    // augmented system: rows are basis vectors extended with the unit
    // coordinate vectors tracking the combination
    let k = basis.len();
    let mut rows: Vec<Vec<Scalar>> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut r = b.clone();
            r.extend((0..k).map(|j| {
                if i == j {
                    field.one()
                } else {
                    field.zero()
                }
            }));
            r
        })
        .collect();
    debug_assert!(rows.iter().all(|r| r.len() == ncols + k));
    // eliminate target against the basis while tracking coefficients
    let mut t: Vec<Scalar> = target.to_vec();
    t.extend((0..k).map(|_| field.zero()));
    let (rr, pivots) = rref(std::mem::take(&mut rows));
    for (r, &pc) in pivots.iter().enumerate() {
        if pc >= ncols {
            continue;
        }
        if !t[pc].is_zero() {
            let factor = t[pc].clone();
            for c in 0..ncols + k {
                let delta = &factor * &rr[r][c];
                t[c] = &t[c] - &delta;
            }
        }
    }
    if t[..ncols].iter().all(|c| c.is_zero()) {
        Some(t[ncols..].iter().map(|c| -c).collect())
    } else {
        None
    }
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn det(mut m: Vec<Vec<Scalar>>, field: &FieldSpec) -> Scalar {
    let n = m.len();
    let mut result = field.one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if sel != col {
            m.swap(col, sel);
            result = -result;
        }
        result = &result * &m[col][col];
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
    }
    result
}
