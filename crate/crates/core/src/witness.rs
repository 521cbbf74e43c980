//! Witness construction, certificates and the flip-space oracle.
//!
//! Every digraph on the same vertex set that agrees with `g` on all pairs up to
//! reversal is obtained by reversing some directed pairs of `g`. The oracle walks that
//! space depth-first, pair by pair in lexicographic order, and checks each subset as
//! soon as its last directed pair has been decided.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::decide::{report, Condition, ConditionReport};
use crate::digraph::Digraph;
use crate::error::{usage, Error, Result};
use crate::hypo::{are_leq_k_hemimorphic, Relation};
use crate::iso::{
    canonical_key, is_hemimorphic, is_isomorphic, pack_induced, sub_key, CanonicalKey, KeyCache,
};
use crate::structure::intervals_where;
use crate::vset::{Combinations, VertexSet};

/// Default cap on the number of flip candidates, `2^22`.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Hemimorphy tally for one subset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeTally {
    pub size: usize,
    pub checked: u64,
    pub passed: u64,
    pub first_failure: Option<VertexSet>,
}

/// Subset-level record of `(<= k)`-hemimorphy and whole-digraph keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    pub tallies: Vec<SizeTally>,
    pub key: CanonicalKey,
    pub other_key: CanonicalKey,
    pub other_dual_key: CanonicalKey,
}

impl Certificate {
    pub fn leq_k_hemimorphic(&self) -> bool {
        self.tallies.iter().all(|t| t.passed == t.checked)
    }

    pub fn hemimorphic(&self) -> bool {
        self.key == self.other_key || self.key == self.other_dual_key
    }

    /// `(<= k)`-hemimorphic and not hemimorphic.
    pub fn is_witness(&self) -> bool {
        self.leq_k_hemimorphic() && !self.hemimorphic()
    }
}

/// Checks every subset of order `1..=min(k, n)` and keys both whole digraphs.
pub fn verify_witness(g: &Digraph, g2: &Digraph, k: usize) -> Result<Certificate> {
    if g.n() != g2.n() {
        return Err(usage("certificates compare digraphs on one vertex set"));
    }
    let mut cmp = crate::hypo::SubsetComparer::new(g2, g);
    let tallies = (1..=k.min(g.n()))
        .map(|size| {
            let (passed, first_failure) = cmp.tally(size, Relation::Hemimorphic);
            SizeTally {
                size,
                checked: crate::vset::binomial(g.n(), size),
                passed,
                first_failure,
            }
        })
        .collect();
    Ok(Certificate {
        n: g.n(),
        k,
        tallies,
        key: canonical_key(g)?,
        other_key: canonical_key(g2)?,
        other_dual_key: canonical_key(&g2.dual())?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMethod {
    LConstruction,
    OracleSearch,
    None,
}

impl WitnessMethod {
    pub const fn name(self) -> &'static str {
        match self {
            WitnessMethod::LConstruction => "L-construction",
            WitnessMethod::OracleSearch => "oracle-search",
            WitnessMethod::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessResult {
    pub witness: Option<Digraph>,
    pub method: WitnessMethod,
    pub certificate: Option<Certificate>,
    /// Reversed pairs of `g` giving the witness, each as `(i, j)` with `i < j`.
    pub flipped: Vec<(usize, usize)>,
    pub note: Option<String>,
}

impl WitnessResult {
    fn none(note: Option<String>) -> Self {
        WitnessResult {
            witness: None,
            method: WitnessMethod::None,
            certificate: None,
            flipped: Vec::new(),
            note,
        }
    }
}

fn flipped_pairs(g: &Digraph, g2: &Digraph) -> Vec<(usize, usize)> {
    g.directed_pairs()
        .into_iter()
        .filter(|&(i, j)| g.has_arc(i, j) != g2.has_arc(i, j))
        .collect()
}

fn dualize_all(g: &Digraph, sets: &[VertexSet]) -> Digraph {
    sets.iter().fold(g.clone(), |h, &s| h.reverse_within(s))
}

/// Nontrivial intervals of `g` inducing a copy of `target`.
fn intervals_isomorphic_to(g: &Digraph, target: &Digraph) -> Vec<VertexSet> {
    let size = target.n();
    let rel = g.relations();
    let directed: Vec<u64> = (0..g.n()).map(|v| rel.directed(v)).collect();
    let tournament = crate::structure::is_tournament(target);
    intervals_where(
        g,
        size,
        |s| {
            s.len() <= size
                && (!tournament || s.iter().all(|v| s.without(v).mask() & !directed[v] == 0))
        },
        |s| s.len() == size && is_isomorphic(&g.induced_unchecked(s), target),
    )
}

/// Candidate for one condition, following the case split of its proof.
fn l_candidate(g: &Digraph, rep: &ConditionReport, c: Condition) -> (Digraph, String) {
    match c {
        Condition::L1 | Condition::L3 => {
            let sets: Vec<VertexSet> = rep.evidence(c);
            let first = sets[0];
            let dual_first = g.induced_unchecked(first).dual();
            let mates: Vec<VertexSet> = if c == Condition::L1 {
                intervals_isomorphic_to(g, &dual_first)
            } else {
                rep.nsd_interval_components
                    .iter()
                    .map(|p| p.0)
                    .filter(|&d| is_isomorphic(&g.induced_unchecked(d), &dual_first))
                    .collect()
            };
            if mates.is_empty() {
                (
                    g.reverse_within(first),
                    format!("{}: dualized {:?} alone", c.name(), first),
                )
            } else {
                (
                    dualize_all(g, &mates),
                    format!(
                        "{}: dualized every copy of the dual of {:?}: {:?}",
                        c.name(),
                        first,
                        mates
                    ),
                )
            }
        }
        _ => {
            let s = rep.evidence(c)[0];
            (
                g.reverse_within(s),
                format!("{}: dualized {:?}", c.name(), s),
            )
        }
    }
}

/// Builds a `(<= 6)`-witness from the first true L condition and certifies it.
///
/// When the certificate fails, the flip oracle is consulted within `budget`; the
/// failed construction is kept in the note either way.
pub fn construct_witness_l(g: &Digraph, rep: &ConditionReport, budget: u64) -> Result<WitnessResult> {
    let Some(c) = [Condition::L1, Condition::L2, Condition::L3, Condition::L4]
        .into_iter()
        .find(|&c| rep.holds(c))
    else {
        return Err(usage("no L condition holds for this digraph"));
    };
    let (candidate, how) = l_candidate(g, rep, c);
    let cert = verify_witness(g, &candidate, 6)?;
    if cert.is_witness() {
        return Ok(WitnessResult {
            flipped: flipped_pairs(g, &candidate),
            witness: Some(candidate),
            method: WitnessMethod::LConstruction,
            certificate: Some(cert),
            note: Some(how),
        });
    }
    let failure = format!(
        "{how}; certificate failed (leq_k_hemimorphic={}, hemimorphic={})",
        cert.leq_k_hemimorphic(),
        cert.hemimorphic()
    );
    match oracle_find_witness_with_budget(g, 6, budget) {
        Ok(mut found) => {
            found.note = Some(failure);
            Ok(found)
        }
        Err(Error::Capacity { .. }) => Ok(WitnessResult::none(Some(failure))),
        Err(e) => Err(e),
    }
}

/// [`construct_witness_l`] on a freshly computed report with the default budget.
pub fn construct_witness(g: &Digraph) -> Result<WitnessResult> {
    construct_witness_l(g, &report(g), DEFAULT_BUDGET)
}

/// One subset to check, with the keys it may take in a mate.
struct Check {
    set: VertexSet,
    members: Vec<usize>,
    packed: u64,
    packed_dual: u64,
    key: u64,
    dual_key: u64,
    large: Option<(CanonicalKey, CanonicalKey)>,
}

/// Depth-first walk of the flip space of `g`, calling `visit` on every mate that agrees
/// with `g` under `rel` on all subsets of order at most `min(k, n)`.
pub struct FlipSearch<'a> {
    g: &'a Digraph,
    pairs: Vec<(usize, usize)>,
    checks: Vec<Vec<Check>>,
    rel: Relation,
    cache: &'a mut KeyCache,
    pub leaves: u64,
    pub nodes: u64,
}

impl<'a> FlipSearch<'a> {
    pub fn new(
        g: &'a Digraph,
        k: usize,
        rel: Relation,
        budget: u64,
        cache: &'a mut KeyCache,
    ) -> Result<Self> {
        if k == 0 {
            return Err(usage("subset size k must be at least 1"));
        }
        let pairs = g.directed_pairs();
        let m = pairs.len();
        if m >= 63 || (1u64 << m) > budget {
            return Err(Error::Capacity {
                what: "flip candidates",
                size: if m >= 63 { u64::MAX } else { 1 << m },
                cap: budget,
            });
        }
        let n = g.n();
        let mut index = alloc::vec![alloc::vec![usize::MAX; n]; n];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            index[i][j] = p;
            index[j][i] = p;
        }
        let rows = g.out_rows();
        let dual = g.in_rows();
        let mut checks: Vec<Vec<Check>> = (0..m).map(|_| Vec::new()).collect();
        for size in 3..=k.min(n) {
            for x in Combinations::new(n, size) {
                let members = x.to_vec();
                let mut last = None;
                for (a, &u) in members.iter().enumerate() {
                    for &w in &members[a + 1..] {
                        let p = index[u][w];
                        if p != usize::MAX && last.is_none_or(|l| p > l) {
                            last = Some(p);
                        }
                    }
                }
                let Some(last) = last else { continue };
                let small = size <= 8;
                let (packed, packed_dual) = if small {
                    (pack_induced(rows, &members), pack_induced(&dual, &members))
                } else {
                    (0, 0)
                };
                let (key, dual_key) = if small {
                    (cache.small(size, packed), cache.small(size, packed_dual))
                } else {
                    (0, 0)
                };
                let large = (!small).then(|| {
                    let h = g.induced_unchecked(x);
                    (crate::canon::key_of(&h), crate::canon::key_of(&h.dual()))
                });
                checks[last].push(Check {
                    set: x,
                    members,
                    packed,
                    packed_dual,
                    key,
                    dual_key,
                    large,
                });
            }
        }
        Ok(FlipSearch {
            g,
            pairs,
            checks,
            rel,
            cache,
            leaves: 0,
            nodes: 0,
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn passes(&mut self, rows: &[u64], c: &Check) -> bool {
        let hemi = self.rel == Relation::Hemimorphic;
        if let Some((key, dual_key)) = &c.large {
            let now = match sub_key(self.cache, rows, c.set) {
                crate::iso::SubKey::Large(k) => k,
                crate::iso::SubKey::Small(_) => unreachable!("large subsets keep large keys"),
            };
            now == *key || (hemi && now == *dual_key)
        } else {
            let now = pack_induced(rows, &c.members);
            if now == c.packed || (hemi && now == c.packed_dual) {
                return true;
            }
            let key = self.cache.small(c.members.len(), now);
            key == c.key || (hemi && key == c.dual_key)
        }
    }

    /// Visits mates in lexicographic order of their flip vectors, pair 0 first and
    /// "kept" before "reversed".
    pub fn run<B>(&mut self, mut visit: impl FnMut(&Digraph, u64) -> ControlFlow<B>) -> Option<B> {
        let mut rows = self.g.out_rows().to_vec();
        let checks = core::mem::take(&mut self.checks);
        let out = self.descend(0, 0, &mut rows, &checks, &mut visit);
        self.checks = checks;
        out
    }

    fn descend<B>(
        &mut self,
        p: usize,
        mask: u64,
        rows: &mut Vec<u64>,
        checks: &[Vec<Check>],
        visit: &mut impl FnMut(&Digraph, u64) -> ControlFlow<B>,
    ) -> Option<B> {
        self.nodes += 1;
        let m = self.pairs.len();
        if p == m {
            self.leaves += 1;
            let h = Digraph::from_rows_unchecked(rows.clone());
            return match visit(&h, mask) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        }
        let (i, j) = self.pairs[p];
        for flip in [false, true] {
            if flip {
                rows[i] ^= 1 << j;
                rows[j] ^= 1 << i;
            }
            let bit = if flip { 1u64 << (m - 1 - p) } else { 0 };
            let ok = checks[p].iter().all(|c| self.passes(rows, c));
            if ok {
                if let Some(b) = self.descend(p + 1, mask | bit, rows, checks, visit) {
                    if flip {
                        rows[i] ^= 1 << j;
                        rows[j] ^= 1 << i;
                    }
                    return Some(b);
                }
            }
            if flip {
                rows[i] ^= 1 << j;
                rows[j] ^= 1 << i;
            }
        }
        None
    }
}

/// First `(<= k)`-hemimorphic, non-hemimorphic flip mate, with the default budget.
pub fn oracle_find_witness(g: &Digraph, k: usize) -> Result<WitnessResult> {
    oracle_find_witness_with_budget(g, k, DEFAULT_BUDGET)
}

pub fn oracle_find_witness_with_budget(g: &Digraph, k: usize, budget: u64) -> Result<WitnessResult> {
    oracle_find_witness_cached(g, k, budget, &mut KeyCache::new())
}

/// [`oracle_find_witness_with_budget`] reusing a caller's key memo.
pub fn oracle_find_witness_cached(
    g: &Digraph,
    k: usize,
    budget: u64,
    cache: &mut KeyCache,
) -> Result<WitnessResult> {
    let mut search = FlipSearch::new(g, k, Relation::Hemimorphic, budget, cache)?;
    let found = search.run(|h, _| {
        if is_hemimorphic(g, h) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(h.clone())
        }
    });
    match found {
        Some(h) => {
            let cert = verify_witness(g, &h, k)?;
            if !cert.is_witness() {
                return Err(Error::Contract(format!(
                    "oracle mate failed its certificate at k={k}"
                )));
            }
            Ok(WitnessResult {
                flipped: flipped_pairs(g, &h),
                witness: Some(h),
                method: WitnessMethod::OracleSearch,
                certificate: Some(cert),
                note: None,
            })
        }
        None => Ok(WitnessResult::none(None)),
    }
}

/// First `(<= k)`-hypomorphic flip mate not isomorphic to `g`.
pub fn oracle_find_hypomorphic_mate(g: &Digraph, k: usize) -> Result<Option<Digraph>> {
    oracle_find_hypomorphic_mate_with_budget(g, k, DEFAULT_BUDGET)
}

pub fn oracle_find_hypomorphic_mate_with_budget(
    g: &Digraph,
    k: usize,
    budget: u64,
) -> Result<Option<Digraph>> {
    oracle_find_hypomorphic_mate_cached(g, k, budget, &mut KeyCache::new())
}

/// [`oracle_find_hypomorphic_mate_with_budget`] reusing a caller's key memo.
pub fn oracle_find_hypomorphic_mate_cached(
    g: &Digraph,
    k: usize,
    budget: u64,
    cache: &mut KeyCache,
) -> Result<Option<Digraph>> {
    let mut search = FlipSearch::new(g, k, Relation::Isomorphic, budget, cache)?;
    Ok(search.run(|h, _| {
        if is_isomorphic(g, h) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(h.clone())
        }
    }))
}

/// Every flip mate agreeing with `g` under `rel` up to order `k`, identity included.
pub fn all_flip_mates(g: &Digraph, k: usize, rel: Relation, budget: u64) -> Result<Vec<Digraph>> {
    let mut cache = KeyCache::new();
    let mut search = FlipSearch::new(g, k, rel, budget, &mut cache)?;
    let mut out = Vec::new();
    search.run::<()>(|h, _| {
        out.push(h.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn flip_by_mask(g: &Digraph, pairs: &[(usize, usize)], mask: u64) -> Digraph {
    let m = pairs.len();
    let mut rows = g.out_rows().to_vec();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        if mask >> (m - 1 - p) & 1 == 1 {
            rows[i] ^= 1 << j;
            rows[j] ^= 1 << i;
        }
    }
    Digraph::from_rows_unchecked(rows)
}

/// Unpruned scan of every flip vector in the same order, for differential testing.
pub fn naive_find_witness(g: &Digraph, k: usize, budget: u64) -> Result<Option<Digraph>> {
    let pairs = g.directed_pairs();
    let m = pairs.len();
    if m >= 63 || (1u64 << m) > budget {
        return Err(Error::Capacity {
            what: "flip candidates",
            size: if m >= 63 { u64::MAX } else { 1 << m },
            cap: budget,
        });
    }
    for mask in 0..1u64 << m {
        let h = flip_by_mask(g, &pairs, mask);
        if are_leq_k_hemimorphic(g, &h, k)? && !is_hemimorphic(g, &h) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Unpruned counterpart of [`oracle_find_hypomorphic_mate`].
pub fn naive_find_hypomorphic_mate(g: &Digraph, k: usize, budget: u64) -> Result<Option<Digraph>> {
    let pairs = g.directed_pairs();
    let m = pairs.len();
    if m >= 63 || (1u64 << m) > budget {
        return Err(Error::Capacity {
            what: "flip candidates",
            size: if m >= 63 { u64::MAX } else { 1 << m },
            cap: budget,
        });
    }
    for mask in 0..1u64 << m {
        let h = flip_by_mask(g, &pairs, mask);
        if crate::hypo::are_leq_k_hypomorphic(g, &h, k)? && !is_isomorphic(g, &h) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn oracle_examples() {
        let f = gallery::flag();
        assert_eq!(oracle_find_witness(&f, 6).unwrap().witness, None);
        let c = gallery::cycle3();
        assert_eq!(oracle_find_witness(&c, 3).unwrap().witness, None);
        // Pairs alone cannot tell a 3-cycle from a transitive triple.
        let mate = oracle_find_hypomorphic_mate(&c, 2).unwrap().unwrap();
        assert!(crate::structure::is_chain(&mate));
        assert_eq!(oracle_find_hypomorphic_mate(&c, 3).unwrap(), None);
        assert!(oracle_find_hypomorphic_mate(&gallery::chain(3), 2).unwrap().is_some());
        assert_eq!(oracle_find_hypomorphic_mate(&gallery::chain(3), 3).unwrap(), None);
        let big = gallery::chain(8);
        assert!(matches!(
            oracle_find_witness(&big, 6),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn certificate_examples() {
        let d = gallery::diamond();
        let c = verify_witness(&d, &d, 6).unwrap();
        assert!(c.leq_k_hemimorphic() && c.hemimorphic() && !c.is_witness());
        let f = gallery::flag();
        assert!(verify_witness(&f, &f.dual(), 6).unwrap().hemimorphic());
        let c = verify_witness(&gallery::chain(3), &gallery::cycle3(), 3).unwrap();
        assert_eq!(c.tallies[2].passed, 0);
        assert_eq!(c.tallies[1].passed, 3);
        assert!(!c.leq_k_hemimorphic());
    }

    #[test]
    fn flip_mates_of_a_cycle() {
        let mates = all_flip_mates(&gallery::cycle3(), 3, Relation::Hemimorphic, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(mates.len(), 2);
        let mates = all_flip_mates(&gallery::cycle3(), 2, Relation::Hemimorphic, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(mates.len(), 8);
    }

    #[test]
    fn l_construction_needs_an_l_condition() {
        assert!(construct_witness(&gallery::flag()).is_err());
    }
}
