//! Exhaustive enumeration of constraint-system solutions over a prime field
//! for fixed parameter pairs: a backtracking search with per-variable
//! constraint propagation, work partitioning by fixed-depth prefixes, a
//! naive full-scan oracle routed through the exact-arithmetic checker, and
//! invariant-based bucketing of the solution stream.
//!
//! The pruning evaluator here compiles the 24 constraint equations into
//! flat coefficient/index tables on its own; it shares no code with the
//! exact checker in `dext`, which is what re-checks every emitted matrix.

use crate::dext::{DEData, ParamPair, SigmaMatrix};
use crate::scalar::FieldSpec;
use std::collections::BTreeMap;
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("modulus {0} is not a supported prime")]
    BadModulus(u64),
    #[error("the skew entries of P and Q must be nonzero mod q")]
    ZeroSkew,
}

/// A 16-entry coefficient matrix over `GF(q)`, row-major in the same layout
/// as the exact `SigmaMatrix`.
pub type Sigma16 = [u8; 16];

/// One unit of search work: a partial assignment of the first `depth`
/// variables, consistent with every constraint whose variables are all
/// assigned.
#[derive(Clone, Debug)]
pub struct SearchTask {
    pub modulus: u64,
    pub p_pair: (u64, u64),
    pub q_pair: (u64, u64),
    pub prefix: Vec<u8>,
}

impl SearchTask {
    pub fn depth(&self) -> usize {
        self.prefix.len()
    }
}

/// Variable order: row-major through the coefficient matrix, so the block
/// with first index 1 (the rows most constraints touch) is assigned first.
fn var(i: usize, j: usize, s: usize, t: usize) -> usize {
    4 * (2 * (i - 1) + (s - 1)) + 2 * (j - 1) + (t - 1)
}

struct Term {
    coef: u64,
    a: usize,
    b: usize,
}

struct Compiled {
    terms: Vec<Term>,
}

/// Compiles the 24 equations into quadratic term lists, bucketed by the
/// largest variable index they mention.
fn compile_constraints(modulus: u64, p_pair: (u64, u64), q_pair: (u64, u64)) -> Vec<Vec<Compiled>> {
    let m = modulus;
    let reduce = |x: u64| x % m;
    let neg = |x: u64| (m - x % m) % m;
    let (q12, q11) = (reduce(q_pair.0), reduce(q_pair.1));
    let (p12, p11) = (reduce(p_pair.0), reduce(p_pair.1));
    let mul = |a: u64, b: u64| (a * b) % m;

    let mut buckets: Vec<Vec<Compiled>> = (0..16).map(|_| Vec::new()).collect();
    let mut push = |terms: Vec<(u64, usize, usize)>| {
        let terms: Vec<Term> = terms
            .into_iter()
            .filter(|&(c, _, _)| c % m != 0)
            .map(|(c, a, b)| Term { coef: c % m, a, b })
            .collect();
        if terms.is_empty() {
            return;
        }
        let last = terms.iter().map(|t| t.a.max(t.b)).max().unwrap();
        buckets[last].push(Compiled { terms });
    };

    for i in 1..=2 {
        for j in 1..=2 {
            // C1ij
            push(vec![
                (1, var(i, 1, 2, 1), var(1, j, 1, 1)),
                (1, var(i, 2, 2, 1), var(2, j, 1, 1)),
                (q11, var(i, 1, 2, 2), var(1, j, 1, 1)),
                (q11, var(i, 2, 2, 2), var(2, j, 1, 1)),
                (neg(q11), var(i, 1, 1, 1), var(1, j, 1, 1)),
                (neg(q11), var(i, 2, 1, 1), var(2, j, 1, 1)),
                (neg(mul(q11, q11)), var(i, 1, 1, 2), var(1, j, 1, 1)),
                (neg(mul(q11, q11)), var(i, 2, 1, 2), var(2, j, 1, 1)),
                (neg(q12), var(i, 1, 1, 1), var(1, j, 2, 1)),
                (neg(q12), var(i, 2, 1, 1), var(2, j, 2, 1)),
                (neg(mul(q12, q11)), var(i, 1, 1, 2), var(1, j, 2, 1)),
                (neg(mul(q12, q11)), var(i, 2, 1, 2), var(2, j, 2, 1)),
            ]);
            // C2ij
            push(vec![
                (1, var(i, 1, 2, 1), var(1, j, 1, 2)),
                (1, var(i, 2, 2, 1), var(2, j, 1, 2)),
                (q12, var(i, 1, 2, 2), var(1, j, 1, 1)),
                (q12, var(i, 2, 2, 2), var(2, j, 1, 1)),
                (neg(q11), var(i, 1, 1, 1), var(1, j, 1, 2)),
                (neg(q11), var(i, 2, 1, 1), var(2, j, 1, 2)),
                (neg(mul(q11, q12)), var(i, 1, 1, 2), var(1, j, 1, 1)),
                (neg(mul(q11, q12)), var(i, 2, 1, 2), var(2, j, 1, 1)),
                (neg(q12), var(i, 1, 1, 1), var(1, j, 2, 2)),
                (neg(q12), var(i, 2, 1, 1), var(2, j, 2, 2)),
                (neg(mul(q12, q12)), var(i, 1, 1, 2), var(1, j, 2, 1)),
                (neg(mul(q12, q12)), var(i, 2, 1, 2), var(2, j, 2, 1)),
            ]);
            // C3ij
            push(vec![
                (1, var(i, 1, 2, 2), var(1, j, 1, 2)),
                (1, var(i, 2, 2, 2), var(2, j, 1, 2)),
                (neg(q11), var(i, 1, 1, 2), var(1, j, 1, 2)),
                (neg(q11), var(i, 2, 1, 2), var(2, j, 1, 2)),
                (neg(q12), var(i, 1, 1, 2), var(1, j, 2, 2)),
                (neg(q12), var(i, 2, 1, 2), var(2, j, 2, 2)),
            ]);
            // C4ij
            push(vec![
                (1, var(1, 1, i, 1), var(2, 1, 1, j)),
                (1, var(1, 1, i, 2), var(2, 1, 2, j)),
                (p11, var(1, 1, i, 1), var(2, 2, 1, j)),
                (p11, var(1, 1, i, 2), var(2, 2, 2, j)),
                (neg(p11), var(1, 1, i, 1), var(1, 1, 1, j)),
                (neg(p11), var(1, 1, i, 2), var(1, 1, 2, j)),
                (neg(mul(p11, p11)), var(1, 1, i, 1), var(1, 2, 1, j)),
                (neg(mul(p11, p11)), var(1, 1, i, 2), var(1, 2, 2, j)),
                (neg(p12), var(2, 1, i, 1), var(1, 1, 1, j)),
                (neg(p12), var(2, 1, i, 2), var(1, 1, 2, j)),
                (neg(mul(p11, p12)), var(2, 1, i, 1), var(1, 2, 1, j)),
                (neg(mul(p11, p12)), var(2, 1, i, 2), var(1, 2, 2, j)),
            ]);
            // C5ij
            push(vec![
                (1, var(1, 2, i, 1), var(2, 1, 1, j)),
                (1, var(1, 2, i, 2), var(2, 1, 2, j)),
                (p12, var(1, 1, i, 1), var(2, 2, 1, j)),
                (p12, var(1, 1, i, 2), var(2, 2, 2, j)),
                (neg(p11), var(1, 2, i, 1), var(1, 1, 1, j)),
                (neg(p11), var(1, 2, i, 2), var(1, 1, 2, j)),
                (neg(mul(p11, p12)), var(1, 1, i, 1), var(1, 2, 1, j)),
                (neg(mul(p11, p12)), var(1, 1, i, 2), var(1, 2, 2, j)),
                (neg(p12), var(2, 2, i, 1), var(1, 1, 1, j)),
                (neg(p12), var(2, 2, i, 2), var(1, 1, 2, j)),
                (neg(mul(p12, p12)), var(2, 1, i, 1), var(1, 2, 1, j)),
                (neg(mul(p12, p12)), var(2, 1, i, 2), var(1, 2, 2, j)),
            ]);
            // C6ij
            push(vec![
                (1, var(1, 2, i, 1), var(2, 2, 1, j)),
                (1, var(1, 2, i, 2), var(2, 2, 2, j)),
                (neg(p11), var(1, 2, i, 1), var(1, 2, 1, j)),
                (neg(p11), var(1, 2, i, 2), var(1, 2, 2, j)),
                (neg(p12), var(2, 2, i, 1), var(1, 2, 1, j)),
                (neg(p12), var(2, 2, i, 2), var(1, 2, 2, j)),
            ]);
        }
    }
    buckets
}

fn eval(c: &Compiled, assignment: &[u8; 16], modulus: u64) -> bool {
    let mut acc: u64 = 0;
    for t in &c.terms {
        acc += t.coef * (assignment[t.a] as u64) * (assignment[t.b] as u64);
    }
    acc % modulus == 0
}

/// Determinant of the 4x4 assignment mod q, by fraction-free expansion.
fn det4_mod(assignment: &[u8; 16], modulus: u64) -> u64 {
    // cofactor expansion over i64 then reduce; entries are < 257 so the
    // integer determinant fits comfortably
    let a = |r: usize, c: usize| assignment[4 * r + c] as i64;
    let det3 = |r: [usize; 3], c: [usize; 3]| -> i64 {
        a(r[0], c[0]) * (a(r[1], c[1]) * a(r[2], c[2]) - a(r[1], c[2]) * a(r[2], c[1]))
            - a(r[0], c[1]) * (a(r[1], c[0]) * a(r[2], c[2]) - a(r[1], c[2]) * a(r[2], c[0]))
            + a(r[0], c[2]) * (a(r[1], c[0]) * a(r[2], c[1]) - a(r[1], c[1]) * a(r[2], c[0]))
    };
    let rows = [1, 2, 3];
    let full = a(0, 0) * det3(rows, [1, 2, 3]) - a(0, 1) * det3(rows, [0, 2, 3])
        + a(0, 2) * det3(rows, [0, 1, 3])
        - a(0, 3) * det3(rows, [0, 1, 2]);
    full.rem_euclid(modulus as i64) as u64
}

struct Searcher<'a> {
    modulus: u64,
    buckets: &'a [Vec<Compiled>],
    assignment: [u8; 16],
    out: Vec<Sigma16>,
}

impl Searcher<'_> {
    fn dfs(&mut self, depth: usize) {
        if depth == 16 {
            if det4_mod(&self.assignment, self.modulus) != 0 {
                self.out.push(self.assignment);
            }
            return;
        }
        for v in 0..self.modulus {
            self.assignment[depth] = v as u8;
            if self.buckets[depth]
                .iter()
                .all(|c| eval(c, &self.assignment, self.modulus))
            {
                self.dfs(depth + 1);
            }
        }
    }

    /// All consistent prefixes of a fixed depth, in lexicographic order.
    fn prefixes(&mut self, depth: usize, target: usize, acc: &mut Vec<Vec<u8>>) {
        if depth == target {
            acc.push(self.assignment[..depth].to_vec());
            return;
        }
        for v in 0..self.modulus {
            self.assignment[depth] = v as u8;
            if self.buckets[depth]
                .iter()
                .all(|c| eval(c, &self.assignment, self.modulus))
            {
                self.prefixes(depth + 1, target, acc);
            }
        }
    }
}

fn validate(modulus: u64, p_pair: (u64, u64), q_pair: (u64, u64)) -> Result<(), EnumError> {
    FieldSpec::prime_field(modulus).map_err(|_| EnumError::BadModulus(modulus))?;
    if p_pair.0 % modulus == 0 || q_pair.0 % modulus == 0 {
        return Err(EnumError::ZeroSkew);
    }
    Ok(())
}

/// Consistent prefixes at a fixed partition depth; workers own disjoint
/// subtrees below them.
pub fn partition_tasks(
    modulus: u64,
    p_pair: (u64, u64),
    q_pair: (u64, u64),
    depth: usize,
) -> Result<Vec<SearchTask>, EnumError> {
    validate(modulus, p_pair, q_pair)?;
    let buckets = compile_constraints(modulus, p_pair, q_pair);
    let mut searcher = Searcher {
        modulus,
        buckets: &buckets,
        assignment: [0; 16],
        out: Vec::new(),
    };
    let mut prefixes = Vec::new();
    searcher.prefixes(0, depth.min(16), &mut prefixes);
    Ok(prefixes
        .into_iter()
        .map(|prefix| SearchTask {
            modulus,
            p_pair,
            q_pair,
            prefix,
        })
        .collect())
}

/// Runs one task to completion, returning its solutions in lex order.
pub fn run_task(task: &SearchTask) -> Vec<Sigma16> {
    let buckets = compile_constraints(task.modulus, task.p_pair, task.q_pair);
    let mut searcher = Searcher {
        modulus: task.modulus,
        buckets: &buckets,
        assignment: [0; 16],
        out: Vec::new(),
    };
    for (k, &v) in task.prefix.iter().enumerate() {
        searcher.assignment[k] = v;
    }
    searcher.dfs(task.prefix.len());
    searcher.out
}

/// Every solution of the constraint system with nonzero determinant over
/// `GF(modulus)`, each exactly once, in lexicographic order of the flat
/// 16-entry assignment. The result is independent of the worker count.
pub fn enumerate_csolutions(
    modulus: u64,
    p_pair: (u64, u64),
    q_pair: (u64, u64),
    workers: usize,
) -> Result<Vec<Sigma16>, EnumError> {
    validate(modulus, p_pair, q_pair)?;
    if workers <= 1 {
        let task = SearchTask {
            modulus,
            p_pair,
            q_pair,
            prefix: Vec::new(),
        };
        return Ok(run_task(&task));
    }
    // depth such that the task count comfortably exceeds the worker count
    let mut depth = 1;
    let mut count = modulus;
    while count < (8 * workers as u64) && depth < 6 {
        depth += 1;
        count *= modulus;
    }
    let tasks = partition_tasks(modulus, p_pair, q_pair, depth)?;
    Ok(run_tasks(tasks, workers))
}

#[cfg(feature = "parallel")]
fn run_tasks(tasks: Vec<SearchTask>, workers: usize) -> Vec<Sigma16> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    // per-task buffers concatenated in task order: bit-identical to the
    // sequential run
    pool.install(|| {
        tasks
            .par_iter()
            .map(run_task)
            .collect::<Vec<_>>()
            .concat()
    })
}

#[cfg(not(feature = "parallel"))]
fn run_tasks(tasks: Vec<SearchTask>, _workers: usize) -> Vec<Sigma16> {
    tasks.iter().map(run_task).collect::<Vec<_>>().concat()
}

/// Rebuilds a solution as exact DE-data over `GF(modulus)` for the
/// independent re-check path.
pub fn to_dedata(
    sigma: &Sigma16,
    modulus: u64,
    p_pair: (u64, u64),
    q_pair: (u64, u64),
) -> DEData {
    let field = FieldSpec::prime_field(modulus).expect("validated modulus");
    let rows: [[crate::scalar::Scalar; 4]; 4] = std::array::from_fn(|r| {
        std::array::from_fn(|c| field.from_i64(sigma[4 * r + c] as i64))
    });
    DEData::new(
        field.clone(),
        ParamPair::new(
            field.from_i64(q_pair.0 as i64),
            field.from_i64(q_pair.1 as i64),
        ),
        ParamPair::new(
            field.from_i64(p_pair.0 as i64),
            field.from_i64(p_pair.1 as i64),
        ),
        SigmaMatrix::from_rows(rows),
    )
    .expect("nonzero skew entries")
}

/// The naive full scan: every one of the `q^16` candidate matrices is
/// evaluated through the exact checker. This is the oracle the backtracking
/// enumerator is compared against; it deliberately routes through `dext`.
pub fn full_scan_oracle(
    modulus: u64,
    p_pair: (u64, u64),
    q_pair: (u64, u64),
    workers: usize,
) -> Result<Vec<Sigma16>, EnumError> {
    validate(modulus, p_pair, q_pair)?;
    // split on the first two variables; each chunk walks its odometer
    let chunks: Vec<(u8, u8)> = (0..modulus as u8)
        .flat_map(|a| (0..modulus as u8).map(move |b| (a, b)))
        .collect();
    let scan_chunk = |&(a, b): &(u8, u8)| -> Vec<Sigma16> {
        let mut out = Vec::new();
        let mut sigma: Sigma16 = [0; 16];
        sigma[0] = a;
        sigma[1] = b;
        loop {
            let d = to_dedata(&sigma, modulus, p_pair, q_pair);
            if crate::dext::passes_system_c(&d) {
                out.push(sigma);
            }
            // advance the odometer over positions 2..16
            let mut pos = 15;
            loop {
                if sigma[pos] as u64 + 1 < modulus {
                    sigma[pos] += 1;
                    break;
                }
                sigma[pos] = 0;
                if pos == 2 {
                    return out;
                }
                pos -= 1;
            }
        }
    };
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .expect("thread pool");
        Ok(pool.install(|| {
            chunks
                .par_iter()
                .map(scan_chunk)
                .collect::<Vec<_>>()
                .concat()
        }))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        Ok(chunks.iter().map(scan_chunk).collect::<Vec<_>>().concat())
    }
}

// ---- bucketing ----

/// Cheap-invariant key: block-vanishing pattern of `Sigma` and `M`, plus the
/// characteristic polynomial (trace, determinant) of the degree-1 matrix of
/// the determinant automorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct BucketKey {
    pub sigma12_zero: bool,
    pub sigma21_zero: bool,
    pub m12_zero: bool,
    pub m21_zero: bool,
    pub detsigma_charpoly: (u64, u64),
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct BucketSummary {
    pub counts: BTreeMap<BucketKey, usize>,
    pub total: usize,
    pub outside_ore_buckets: usize,
}

impl fmt::Display for BucketSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>8} {:>6} {:>6} {:>6} {:>6}  {:<16}",
            "count", "S12=0", "S21=0", "M12=0", "M21=0", "charpoly(det s)"
        )?;
        for (key, count) in &self.counts {
            writeln!(
                f,
                "{:>8} {:>6} {:>6} {:>6} {:>6}  t^2-{}t+{}",
                count,
                key.sigma12_zero,
                key.sigma21_zero,
                key.m12_zero,
                key.m21_zero,
                key.detsigma_charpoly.0,
                key.detsigma_charpoly.1
            )?;
        }
        writeln!(f, "total solutions: {}", self.total)?;
        write!(
            f,
            "outside every iterated-Ore bucket: {}",
            self.outside_ore_buckets
        )
    }
}

fn block_zero(sigma: &Sigma16, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> bool {
    rows.clone()
        .all(|r| cols.clone().all(|c| sigma[4 * r + c] == 0))
}

fn m_entry(sigma: &Sigma16, r: usize, c: usize) -> u8 {
    // inverse of the re-indexing: M[2s+i][2t+j] = Sigma[2i+s][2j+t]
    let (s, i) = (r / 2, r % 2);
    let (t, j) = (c / 2, c % 2);
    sigma[4 * (2 * i + s) + 2 * j + t]
}

/// trace and determinant of the 2x2 determinant-automorphism matrix mod q.
fn detsigma_charpoly(
    sigma: &Sigma16,
    modulus: u64,
    p_pair: (u64, u64),
) -> (u64, u64) {
    let m = modulus as i64;
    let a = |i: usize, j: usize, s: usize, t: usize| {
        sigma[4 * (2 * (i - 1) + (s - 1)) + 2 * (j - 1) + (t - 1)] as i64
    };
    let block = |i: usize, j: usize| -> [[i64; 2]; 2] {
        [[a(i, j, 1, 1), a(i, j, 1, 2)], [a(i, j, 2, 1), a(i, j, 2, 2)]]
    };
    let mul2 = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| -> [[i64; 2]; 2] {
        [
            [
                (x[0][0] * y[0][0] + x[0][1] * y[1][0]).rem_euclid(m),
                (x[0][0] * y[0][1] + x[0][1] * y[1][1]).rem_euclid(m),
            ],
            [
                (x[1][0] * y[0][0] + x[1][1] * y[1][0]).rem_euclid(m),
                (x[1][0] * y[0][1] + x[1][1] * y[1][1]).rem_euclid(m),
            ],
        ]
    };
    let (s11, s12, s21, s22) = (block(1, 1), block(1, 2), block(2, 1), block(2, 2));
    let (p12, p11) = (p_pair.0 as i64, p_pair.1 as i64);
    let t1 = mul2(s11, s12);
    let t2 = mul2(s11, s22);
    let t3 = mul2(s21, s12);
    let d = |r: usize, c: usize| (-p11 * t1[r][c] + t2[r][c] - p12 * t3[r][c]).rem_euclid(m);
    let trace = (d(0, 0) + d(1, 1)).rem_euclid(m) as u64;
    let det = (d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0)).rem_euclid(m) as u64;
    (trace, det)
}

/// Buckets a solution stream by cheap invariants and counts how many
/// solutions escape every iterated-Ore certificate.
pub fn bucket_solutions(
    solutions: &[Sigma16],
    modulus: u64,
    p_pair: (u64, u64),
    q_pair: (u64, u64),
) -> BucketSummary {
    let mut summary = BucketSummary::default();
    for sigma in solutions {
        let key = BucketKey {
            sigma12_zero: block_zero(sigma, 0..2, 2..4),
            sigma21_zero: block_zero(sigma, 2..4, 0..2),
            m12_zero: (0..2).all(|r| (2..4).all(|c| m_entry(sigma, r, c) == 0)),
            m21_zero: (2..4).all(|r| (0..2).all(|c| m_entry(sigma, r, c) == 0)),
            detsigma_charpoly: detsigma_charpoly(sigma, modulus, p_pair),
        };
        let is_ore = key.sigma12_zero
            || (key.sigma21_zero && p_pair.1 % modulus == 0)
            || key.m12_zero
            || (key.m21_zero && q_pair.1 % modulus == 0);
        if !is_ore {
            summary.outside_ore_buckets += 1;
        }
        *summary.counts.entry(key).or_insert(0) += 1;
        summary.total += 1;
    }
    summary
}

/// Renders solutions one per line as 16 comma-separated residues.
pub fn solutions_to_text(solutions: &[Sigma16]) -> String {
    let mut out = String::new();
    for s in solutions {
        let cells: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
