//! Degree-bounded noncommutative Groebner bases for two-sided graded ideals
//! of the free algebra: diamond-lemma completion by overlap resolution,
//! normal forms, graded dimension counting, and an independent linear-algebra
//! dimension oracle that involves no rewriting at all.

use crate::freealg::{Gen, NcPoly, Word, GENS};
use crate::linalg::{rank_of_sparse_rows, RowSpace};
use crate::scalar::{FieldSpec, Scalar};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NcgbError {
    #[error("relations must be nonzero")]
    ZeroRelation,
    #[error("relations must be homogeneous: `{0}` is not")]
    NonHomogeneous(String),
    #[error("degree bound {bound} is below the largest relation degree {need}")]
    BoundTooSmall { bound: usize, need: usize },
    #[error("degree {got} exceeds the completed range {through}")]
    DegreeAboveBound { got: usize, through: usize },
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
}

/// One oriented rewriting rule `lead -> tail` with `lead` monic and
/// `tail < lead` in deg-lex; it represents the ideal element `lead - tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub tail: NcPoly,
}

impl Rule {
    fn as_poly(&self) -> NcPoly {
        let mut p = -&self.tail;
        p.add_term(self.lead.clone(), Scalar::rat_i64(1));
        p
    }
}

/// Graded dimension vector `d_0..d_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims(pub Vec<usize>);

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// A completed (through `complete_through`) rewriting system for a graded
/// two-sided ideal. Immutable once built; queries are read-only.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    field: FieldSpec,
    rules: Vec<Rule>,
    degree_bound: usize,
    complete_through: usize,
    truncated: bool,
}

struct Completion {
    // rules are never reordered; deactivated slots stay to keep indices stable
    rules: Vec<Option<Rule>>,
    // (degree, i, j, start of the second leading word)
    pending: BinaryHeap<Reverse<(usize, usize, usize, usize)>>,
    bound: usize,
    truncated: bool,
}

impl Completion {
    fn active(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    fn normal_form(&self, p: &NcPoly) -> NcPoly {
        normal_form_with(p, |w| {
            // leftmost occurrence wins; ties broken by rule index
            let mut best: Option<(usize, usize)> = None;
            for (idx, rule) in self.active() {
                if let Some(pos) = w.find(&rule.lead) {
                    if best.map_or(true, |(bpos, bidx)| (pos, idx) < (bpos, bidx)) {
                        best = Some((pos, idx));
                    }
                }
            }
            best.map(|(pos, idx)| (pos, self.rules[idx].as_ref().unwrap()))
        })
    }

    /// Reduces `p` and, when nonzero, installs it as a new monic rule,
    /// enqueues its overlaps and re-reduces any older rule whose leading
    /// word contains the new leading word.
    fn insert_poly(&mut self, p: NcPoly) {
        let mut stack = vec![p];
        while let Some(p) = stack.pop() {
            let p = self.normal_form(&p);
            if p.is_zero() {
                continue;
            }
            let (lead, lc) = {
                let (w, c) = p.leading_term().expect("nonzero");
                (w.clone(), c.clone())
            };
            if lead.degree() > self.bound {
                self.truncated = true;
                continue;
            }
            let inv = lc.inv().expect("leading coefficient is invertible");
            let mut tail = -&p;
            tail.add_term(lead.clone(), lc.clone());
            let tail = tail.scale(&inv);
            let new_idx = self.rules.len();
            self.rules.push(Some(Rule {
                lead: lead.clone(),
                tail,
            }));
            // overlaps with every active rule, in both orders
            let leads: Vec<(usize, Word)> = self
                .active()
                .map(|(i, r)| (i, r.lead.clone()))
                .collect();
            for (i, other) in leads {
                self.enqueue_overlaps(i, &other, new_idx, &lead);
                if i != new_idx {
                    self.enqueue_overlaps(new_idx, &lead, i, &other);
                }
            }
            // inclusion reduction: an older lead containing the new lead is
            // no longer reduced; pull the rule out and reprocess it
            let stale: Vec<usize> = self
                .active()
                .filter(|&(i, r)| i != new_idx && r.lead.contains_factor(&lead))
                .map(|(i, _)| i)
                .collect();
            for i in stale {
                let rule = self.rules[i].take().expect("active");
                stack.push(rule.as_poly());
            }
        }
    }

    fn enqueue_overlaps(&mut self, i: usize, lead_i: &Word, j: usize, lead_j: &Word) {
        let (la, lb) = (lead_i.degree(), lead_j.degree());
        for o in 1..la.min(lb) {
            if lead_i.0[la - o..] == lead_j.0[..o] {
                let deg = la + lb - o;
                if deg > self.bound {
                    self.truncated = true;
                } else {
                    self.pending.push(Reverse((deg, i, j, la - o)));
                }
            }
        }
    }

    fn resolve_all(&mut self) {
        while let Some(Reverse((_deg, i, j, pos))) = self.pending.pop() {
            let (Some(ri), Some(rj)) = (self.rules[i].clone(), self.rules[j].clone()) else {
                continue; // a participant was deactivated
            };
            let la = ri.lead.degree();
            // the ambiguity word is lead_i overlapped with lead_j at `pos`
            let o = la - pos;
            if rj.lead.degree() <= o || ri.lead.0[pos..] != rj.lead.0[..o] {
                continue; // stale entry from a replaced rule index
            }
            let suffix = rj.lead.slice(o..rj.lead.degree());
            let prefix = ri.lead.slice(0..pos);
            let via_i = ri.tail.sandwich(&Word::empty(), &suffix);
            let via_j = rj.tail.sandwich(&prefix, &Word::empty());
            let s_poly = &via_i - &via_j;
            self.insert_poly(s_poly);
        }
    }

    /// Final interreduction: every tail in normal form w.r.t. the other rules.
    fn interreduce_tails(&mut self) {
        loop {
            let mut changed = false;
            for idx in 0..self.rules.len() {
                let Some(rule) = self.rules[idx].clone() else {
                    continue;
                };
                let reduced = self.normal_form(&rule.tail);
                if reduced != rule.tail {
                    self.rules[idx] = Some(Rule {
                        lead: rule.lead,
                        tail: reduced,
                    });
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
}

fn normal_form_with<'a, F>(p: &NcPoly, find_redex: F) -> NcPoly
where
    F: Fn(&Word) -> Option<(usize, &'a Rule)>,
{
    let mut p = p.clone();
    loop {
        // reduce the largest reducible word; deterministic because the word
        // order and the redex choice within a word are both total
        let target = p
            .terms()
            .rev()
            .find_map(|(w, c)| find_redex(w).map(|(pos, rule)| (w.clone(), c.clone(), pos, rule)));
        let Some((word, coeff, pos, rule)) = target else {
            return p;
        };
        let prefix = word.slice(0..pos);
        let suffix = word.slice(pos + rule.lead.degree()..word.degree());
        p.add_term(word, coeff.neg());
        let replacement = rule.tail.sandwich(&prefix, &suffix).scale(&coeff);
        p = &p + &replacement;
    }
}

/// Runs diamond-lemma completion on homogeneous `relations` through degree
/// `degree_bound`. Overlaps are processed in a canonical order (degree, then
/// rule-pair index, then overlap position) so the output rule list is
/// deterministic. An ambiguity or rule above the bound is recorded as a
/// truncation, not an error.
pub fn complete(
    relations: &[NcPoly],
    degree_bound: usize,
    field: &FieldSpec,
) -> Result<RewriteSystem, NcgbError> {
    let mut prepared = Vec::with_capacity(relations.len());
    let mut max_deg = 0;
    for r in relations {
        if r.is_zero() {
            return Err(NcgbError::ZeroRelation);
        }
        if !r.is_homogeneous() {
            return Err(NcgbError::NonHomogeneous(r.to_string()));
        }
        let mut promoted = NcPoly::zero();
        for (w, c) in r.terms() {
            promoted.add_term(w.clone(), field.promote(c.clone())?);
        }
        max_deg = max_deg.max(promoted.degree().unwrap_or(0));
        prepared.push(promoted);
    }
    if degree_bound < max_deg {
        return Err(NcgbError::BoundTooSmall {
            bound: degree_bound,
            need: max_deg,
        });
    }
    let mut completion = Completion {
        rules: Vec::new(),
        pending: BinaryHeap::new(),
        bound: degree_bound,
        truncated: false,
    };
    for r in prepared {
        completion.insert_poly(r);
    }
    completion.resolve_all();
    completion.interreduce_tails();
    let rules: Vec<Rule> = completion.rules.into_iter().flatten().collect();
    Ok(RewriteSystem {
        field: field.clone(),
        rules,
        degree_bound,
        complete_through: degree_bound,
        truncated: completion.truncated,
    })
}

impl RewriteSystem {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn complete_through(&self) -> usize {
        self.complete_through
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// The unique canonical representative of `p` modulo the ideal, valid
    /// for degrees within the completed range.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, NcgbError> {
        let deg = p.degree().unwrap_or(0);
        if deg > self.complete_through {
            return Err(NcgbError::DegreeAboveBound {
                got: deg,
                through: self.complete_through,
            });
        }
        Ok(normal_form_with(p, |w| {
            let mut best: Option<(usize, usize)> = None;
            for (idx, rule) in self.rules.iter().enumerate() {
                if let Some(pos) = w.find(&rule.lead) {
                    if best.map_or(true, |(bpos, bidx)| (pos, idx) < (bpos, bidx)) {
                        best = Some((pos, idx));
                    }
                }
            }
            best.map(|(pos, idx)| (pos, &self.rules[idx]))
        }))
    }

    /// Normal words of each degree `<= n` over the sub-alphabet `gens`:
    /// words containing no rule's leading word as a factor. Because the
    /// system is confluent through `n`, these count graded dimensions.
    pub fn graded_dims(&self, n: usize, gens: &[Gen]) -> Result<GradedDims, NcgbError> {
        if n > self.complete_through {
            return Err(NcgbError::DegreeAboveBound {
                got: n,
                through: self.complete_through,
            });
        }
        let leads: HashSet<&[Gen]> = self.rules.iter().map(|r| r.lead.0.as_slice()).collect();
        let max_lead = self.rules.iter().map(|r| r.lead.degree()).max().unwrap_or(1);
        let mut dims = vec![1usize];
        let mut frontier: Vec<Vec<Gen>> = vec![Vec::new()];
        for _ in 1..=n {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in gens {
                    let mut cand = w.clone();
                    cand.push(g);
                    // only suffixes ending at the new letter can be fresh redexes
                    let len = cand.len();
                    let reducible = (1..=max_lead.min(len))
                        .any(|l| leads.contains(&cand[len - l..]));
                    if !reducible {
                        next.push(cand);
                    }
                }
            }
            dims.push(next.len());
            frontier = next;
        }
        Ok(GradedDims(dims))
    }

    /// All normal words of exactly degree `n` over `gens`, in lex order.
    pub fn normal_words(&self, n: usize, gens: &[Gen]) -> Result<Vec<Word>, NcgbError> {
        if n > self.complete_through {
            return Err(NcgbError::DegreeAboveBound {
                got: n,
                through: self.complete_through,
            });
        }
        let leads: HashSet<&[Gen]> = self.rules.iter().map(|r| r.lead.0.as_slice()).collect();
        let max_lead = self.rules.iter().map(|r| r.lead.degree()).max().unwrap_or(1);
        let mut frontier: Vec<Vec<Gen>> = vec![Vec::new()];
        for _ in 1..=n {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in gens {
                    let mut cand = w.clone();
                    cand.push(g);
                    let len = cand.len();
                    let reducible = (1..=max_lead.min(len))
                        .any(|l| leads.contains(&cand[len - l..]));
                    if !reducible {
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        Ok(frontier.into_iter().map(Word).collect())
    }

    /// Serializes the system, one rule per line as `lead -> tail`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&format!("{} -> {}\n", r.lead, r.tail));
        }
        out
    }
}

/// Graded dimensions by pure linear algebra, with no rewriting involved:
/// `d_n = (number of degree-n words) - rank of the ideal span in degree n`,
/// where the span is generated by all `u * r * v` with `r` a relation.
pub fn dims_oracle(relations: &[NcPoly], n: usize, gens: &[Gen]) -> Result<GradedDims, NcgbError> {
    for r in relations {
        if r.is_zero() {
            return Err(NcgbError::ZeroRelation);
        }
        if !r.is_homogeneous() {
            return Err(NcgbError::NonHomogeneous(r.to_string()));
        }
    }
    let mut dims = vec![1usize];
    for deg in 1..=n {
        let words = all_words(deg, gens);
        let index: std::collections::HashMap<&[Gen], usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.0.as_slice(), i))
            .collect();
        let mut space = RowSpace::new();
        for r in relations {
            let rdeg = r.degree().unwrap_or(0);
            if rdeg > deg {
                continue;
            }
            let pad = deg - rdeg;
            for left in 0..=pad {
                for u in all_words(left, gens) {
                    for v in all_words(pad - left, gens) {
                        let prod = r.sandwich(&u, &v);
                        let row: Vec<(usize, Scalar)> = prod
                            .terms()
                            .map(|(w, c)| (index[w.0.as_slice()], c.clone()))
                            .collect();
                        let mut row = row;
                        row.sort_by_key(|(i, _)| *i);
                        space.insert(row);
                    }
                }
            }
        }
        dims.push(words.len() - space.rank());
    }
    Ok(GradedDims(dims))
}

/// All words of one degree over a sub-alphabet, in lex order.
pub fn all_words(deg: usize, gens: &[Gen]) -> Vec<Word> {
    let mut out: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..deg {
        let mut next = Vec::with_capacity(out.len() * gens.len());
        for w in &out {
            for &g in gens {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Word).collect()
}

/// Rank of the relation span inside one graded piece of the full word space.
pub fn relation_space_rank(relations: &[NcPoly], deg: usize, gens: &[Gen]) -> usize {
    let words = all_words(deg, gens);
    let index: std::collections::HashMap<&[Gen], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.0.as_slice(), i))
        .collect();
    rank_of_sparse_rows(relations.iter().filter(|r| r.degree() == Some(deg)).map(|r| {
        let mut row: Vec<(usize, Scalar)> = r
            .terms()
            .map(|(w, c)| (index[w.0.as_slice()], c.clone()))
            .collect();
        row.sort_by_key(|(i, _)| *i);
        row
    }))
}

/// The four-generator alphabet.
pub fn full_alphabet() -> &'static [Gen] {
    &GENS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::NcPoly;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn p(s: &str) -> NcPoly {
        NcPoly::parse(&q(), s).unwrap()
    }

    fn commutative_relations() -> Vec<NcPoly> {
        [
            "x2*x1 - x1*x2",
            "y1*x1 - x1*y1",
            "y1*x2 - x2*y1",
            "y2*x1 - x1*y2",
            "y2*x2 - x2*y2",
            "y2*y1 - y1*y2",
        ]
        .iter()
        .map(|s| p(s))
        .collect()
    }

    // the six relations printed for the first non-Ore family, used as a
    // fixed working example throughout
    fn family_a_relations() -> Vec<NcPoly> {
        [
            "x2*x1 - x1*x2",
            "y2*y1 - y1*y2 - y1^2",
            "y1*x1 - x1*y1",
            "y1*x2 - x2*y1 - x1*y2",
            "y2*x1 - x1*y2",
            "y2*x2 + 2*x2*y1 + x1*y2 - x2*y2",
        ]
        .iter()
        .map(|s| p(s))
        .collect()
    }

    fn binomials(n: usize) -> Vec<usize> {
        (0..=n)
            .map(|k| (k + 1) * (k + 2) * (k + 3) / 6)
            .collect()
    }

    #[test]
    fn commutative_ring_completes_without_new_rules() {
        let rs = complete(&commutative_relations(), 8, &q()).unwrap();
        assert_eq!(rs.rules().len(), 6);
        assert!(!rs.truncated());
        let dims = rs.graded_dims(8, full_alphabet()).unwrap();
        assert_eq!(dims.0, binomials(8));
    }

    #[test]
    fn family_a_has_polynomial_growth() {
        let rs = complete(&family_a_relations(), 8, &q()).unwrap();
        let dims = rs.graded_dims(8, full_alphabet()).unwrap();
        assert_eq!(dims.0, vec![1, 4, 10, 20, 35, 56, 84, 120, 165]);
    }

    #[test]
    fn jordan_plane_is_a_single_confluent_rule() {
        let rs = complete(&[p("y2*y1 - y1*y2 - y1^2")], 8, &q()).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert!(!rs.truncated());
        let dims = rs.graded_dims(5, &[Gen::Y1, Gen::Y2]).unwrap();
        assert_eq!(dims.0, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn quantum_plane_dims() {
        let rs = complete(&[p("x2*x1 - 5*x1*x2")], 8, &q()).unwrap();
        let dims = rs.graded_dims(4, &[Gen::X1, Gen::X2]).unwrap();
        assert_eq!(dims.0, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn free_algebra_dims() {
        let rs = complete(&[], 3, &q()).unwrap();
        let dims = rs.graded_dims(3, full_alphabet()).unwrap();
        assert_eq!(dims.0, vec![1, 4, 16, 64]);
    }

    #[test]
    fn normal_forms_in_family_a() {
        let rs = complete(&family_a_relations(), 8, &q()).unwrap();
        assert_eq!(rs.normal_form(&p("y2*y1")).unwrap(), p("y1*y2 + y1^2"));
        assert_eq!(rs.normal_form(&p("x1")).unwrap(), p("x1"));
        assert!(rs
            .normal_form(&p("y1*x2 - x2*y1 - x1*y2"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn normal_form_is_idempotent_on_random_input() {
        use rand::{Rng, SeedableRng};
        let rs = complete(&family_a_relations(), 8, &q()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mut poly = NcPoly::zero();
            for _ in 0..rng.gen_range(1..5) {
                let len = rng.gen_range(0..5);
                let w: Vec<Gen> = (0..len).map(|_| GENS[rng.gen_range(0..4)]).collect();
                poly.add_term(Word(w), q().random(&mut rng));
            }
            let once = rs.normal_form(&poly).unwrap();
            assert_eq!(rs.normal_form(&once).unwrap(), once);
        }
    }

    #[test]
    fn ideal_membership_soundness() {
        let relations = family_a_relations();
        let rs = complete(&relations, 8, &q()).unwrap();
        for r in &relations {
            for du in 0..=2 {
                for dv in 0..=(2 - du) {
                    for u in all_words(du, full_alphabet()) {
                        for v in all_words(dv, full_alphabet()) {
                            let prod = r.sandwich(&u, &v);
                            assert!(
                                rs.normal_form(&prod).unwrap().is_zero(),
                                "u={u} r={r} v={v}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn completion_is_deterministic() {
        let a = complete(&family_a_relations(), 8, &q()).unwrap();
        let b = complete(&family_a_relations(), 8, &q()).unwrap();
        assert_eq!(a.rules(), b.rules());
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn oracle_agrees_with_rewriting_on_family_a() {
        let relations = family_a_relations();
        let rs = complete(&relations, 4, &q()).unwrap();
        let via_rules = rs.graded_dims(3, full_alphabet()).unwrap();
        let via_oracle = dims_oracle(&relations, 3, full_alphabet()).unwrap();
        assert_eq!(via_oracle.0, vec![1, 4, 10, 20]);
        assert_eq!(via_rules.0, via_oracle.0);
    }

    #[test]
    fn oracle_kills_everything_when_all_degree_two_words_vanish() {
        let relations: Vec<NcPoly> = all_words(2, full_alphabet())
            .into_iter()
            .map(|w| NcPoly::monomial(Scalar::rat_i64(1), w))
            .collect();
        let dims = dims_oracle(&relations, 3, full_alphabet()).unwrap();
        assert_eq!(dims.0, vec![1, 4, 0, 0]);
    }

    #[test]
    fn oracle_on_the_free_algebra() {
        let dims = dims_oracle(&[], 2, full_alphabet()).unwrap();
        assert_eq!(dims.0, vec![1, 4, 16]);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            complete(&[p("x1 + x1*x2")], 8, &q()),
            Err(NcgbError::NonHomogeneous(_))
        ));
        assert!(matches!(
            complete(&[NcPoly::zero()], 8, &q()),
            Err(NcgbError::ZeroRelation)
        ));
        assert!(matches!(
            complete(&[p("x1*x2*x1")], 2, &q()),
            Err(NcgbError::BoundTooSmall { .. })
        ));
        let rs = complete(&commutative_relations(), 3, &q()).unwrap();
        assert!(matches!(
            rs.normal_form(&p("x1*x2*x1*x2")),
            Err(NcgbError::DegreeAboveBound { .. })
        ));
        assert!(matches!(
            rs.graded_dims(4, full_alphabet()),
            Err(NcgbError::DegreeAboveBound { .. })
        ));
    }

    #[test]
    fn truncation_is_recorded_not_fatal() {
        // y1^2 -> x1 y1 generates the rules y1 x1^k y1 -> x1^{k+1} y1 in
        // every degree, so completion keeps running into the bound
        let rs = complete(&[p("y1^2 - x1*y1")], 6, &q()).unwrap();
        assert!(rs.truncated());
        assert!(rs.rules().len() > 1);
        // partial dims are still reported within the completed range
        let dims = rs.graded_dims(6, &[Gen::X1, Gen::Y1]).unwrap();
        assert_eq!(dims.0[0], 1);
        assert_eq!(dims.0[1], 2);
        // a fully confluent system is not flagged
        let rs = complete(&[p("x2*x1 - 5*x1*x2")], 6, &q()).unwrap();
        assert!(!rs.truncated());
    }

    #[test]
    fn rule_serialization_round_trips_through_the_polynomial_grammar() {
        let rs = complete(&family_a_relations(), 8, &q()).unwrap();
        let text = rs.to_text();
        for line in text.lines() {
            let (lead, tail) = line.split_once(" -> ").unwrap();
            let lead = NcPoly::parse(&q(), lead).unwrap();
            let _tail = NcPoly::parse(&q(), tail).unwrap();
            assert_eq!(lead.num_terms(), 1);
        }
    }
}
