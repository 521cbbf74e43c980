//! Subset-wise comparison of two digraphs on the same vertex set and the difference
//! relation.

use alloc::format;
use alloc::vec::Vec;

use crate::digraph::Digraph;
use crate::error::{usage, Error, Result};
use crate::iso::{is_hemimorphic, is_isomorphic, sub_key, KeyCache, DEFAULT_CAP};
use crate::partition::{Partition, UnionFind};
use crate::vset::{Combinations, VertexSet};

/// How two induced subdigraphs on the same subset must relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Isomorphic,
    Hemimorphic,
}

fn same_order(g1: &Digraph, g2: &Digraph) -> Result<()> {
    if g1.n() != g2.n() {
        return Err(usage(format!(
            "digraphs must share a vertex set (orders {} and {})",
            g1.n(),
            g2.n()
        )));
    }
    Ok(())
}

/// Compares `g1` and `g2` on every subset of one size, memoising small keys.
pub(crate) struct SubsetComparer<'a> {
    g1: &'a [u64],
    g2: &'a [u64],
    g2_dual: Vec<u64>,
    n: usize,
    pub(crate) cache: KeyCache,
}

impl<'a> SubsetComparer<'a> {
    pub(crate) fn new(g1: &'a Digraph, g2: &'a Digraph) -> Self {
        SubsetComparer {
            g1: g1.out_rows(),
            g2: g2.out_rows(),
            g2_dual: g2.in_rows(),
            n: g1.n(),
            cache: KeyCache::new(),
        }
    }

    pub(crate) fn agrees_on(&mut self, x: VertexSet, rel: Relation) -> bool {
        let a = sub_key(&mut self.cache, self.g1, x);
        if a == sub_key(&mut self.cache, self.g2, x) {
            return true;
        }
        rel == Relation::Hemimorphic && a == sub_key(&mut self.cache, &self.g2_dual, x)
    }

    /// Number of `size`-subsets on which the relation holds, and the first failure.
    pub(crate) fn tally(&mut self, size: usize, rel: Relation) -> (u64, Option<VertexSet>) {
        let mut passed = 0;
        let mut first_failure = None;
        for x in Combinations::new(self.n, size) {
            if self.agrees_on(x, rel) {
                passed += 1;
            } else if first_failure.is_none() {
                first_failure = Some(x);
            }
        }
        (passed, first_failure)
    }

    pub(crate) fn all(&mut self, size: usize, rel: Relation) -> bool {
        Combinations::new(self.n, size).all(|x| self.agrees_on(x, rel))
    }
}

/// `{k}`-hypomorphy: isomorphic on every `k`-subset. Vacuously true when `k > n`.
pub fn are_k_hypomorphic(g1: &Digraph, g2: &Digraph, k: usize) -> Result<bool> {
    same_order(g1, g2)?;
    if k == 0 {
        return Err(usage("subset size k must be at least 1"));
    }
    if k > g1.n() {
        return Ok(true);
    }
    Ok(SubsetComparer::new(g1, g2).all(k, Relation::Isomorphic))
}

/// Unmemoised `{k}`-hypomorphy, kept for differential testing.
pub fn are_k_hypomorphic_reference(g1: &Digraph, g2: &Digraph, k: usize) -> Result<bool> {
    same_order(g1, g2)?;
    if k == 0 {
        return Err(usage("subset size k must be at least 1"));
    }
    Ok(Combinations::new(g1.n(), k)
        .all(|x| is_isomorphic(&g1.induced_unchecked(x), &g2.induced_unchecked(x))))
}

fn leq_k(g1: &Digraph, g2: &Digraph, k: usize, rel: Relation) -> Result<bool> {
    same_order(g1, g2)?;
    if k == 0 {
        return Err(usage("subset size k must be at least 1"));
    }
    let top = k.min(g1.n());
    if top >= 2 && !pair_kinds_agree(g1, g2) {
        return Ok(false);
    }
    let mut cmp = SubsetComparer::new(g1, g2);
    Ok((3..=top).all(|size| cmp.all(size, rel)))
}

/// Pair states agree up to reversal on every pair: the `(<= 2)` relations coincide.
fn pair_kinds_agree(g1: &Digraph, g2: &Digraph) -> bool {
    let n = g1.n();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let (a, b) = (g1.state(i, j), g2.state(i, j));
            a == b || (a.is_directed() && b.is_directed())
        })
    })
}

/// `(<= k)`-hemimorphy: hemimorphic on every subset of at most `min(k, n)` vertices.
pub fn are_leq_k_hemimorphic(g1: &Digraph, g2: &Digraph, k: usize) -> Result<bool> {
    leq_k(g1, g2, k, Relation::Hemimorphic)
}

/// `(<= k)`-hypomorphy: isomorphic on every subset of at most `min(k, n)` vertices.
pub fn are_leq_k_hypomorphic(g1: &Digraph, g2: &Digraph, k: usize) -> Result<bool> {
    leq_k(g1, g2, k, Relation::Isomorphic)
}

/// Classes of the closure of "the pair `{x, y}` reads differently in `g1` and `g2`".
///
/// Requires `(<= 2)`-hemimorphy, under which only directed pairs can differ and they
/// differ in both orders at once.
pub fn difference_classes(g1: &Digraph, g2: &Digraph) -> Result<Partition> {
    same_order(g1, g2)?;
    if !pair_kinds_agree(g1, g2) {
        return Err(Error::Contract(
            "difference classes need (<= 2)-hemimorphic digraphs".into(),
        ));
    }
    Ok(difference_closure(g1, g2))
}

/// The same closure without the precondition check; outside `(<= 2)`-hemimorphy the
/// result carries no equivalence-relation guarantee.
pub fn difference_closure(g1: &Digraph, g2: &Digraph) -> Partition {
    let n = g1.n().min(g2.n());
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if g1.has_arc(i, j) != g2.has_arc(i, j) || g1.has_arc(j, i) != g2.has_arc(j, i) {
                uf.union(i, j);
            }
        }
    }
    uf.into_partition()
}

/// Hemimorphic on every subset. Capped at [`DEFAULT_CAP`] vertices.
pub fn are_hereditarily_hemimorphic(g1: &Digraph, g2: &Digraph) -> Result<bool> {
    same_order(g1, g2)?;
    if g1.n() > DEFAULT_CAP {
        return Err(Error::Capacity {
            what: "hereditary check vertex count",
            size: g1.n() as u64,
            cap: DEFAULT_CAP as u64,
        });
    }
    let mut cmp = SubsetComparer::new(g1, g2);
    Ok((1..=g1.n()).all(|size| cmp.all(size, Relation::Hemimorphic)))
}

/// Unmemoised whole-digraph check for one subset, for tests and certificates.
pub fn hemimorphic_on(g1: &Digraph, g2: &Digraph, x: VertexSet) -> bool {
    is_hemimorphic(&g1.induced_unchecked(x), &g2.induced_unchecked(x))
}
