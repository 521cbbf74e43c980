//! Arc-connected components, intervals, contraction and the structural classifiers.

use alloc::vec::Vec;

use crate::digraph::{Digraph, PairState};
use crate::error::{contract as contract_err, Error, Result};
use crate::iso::{sub_key, KeyCache, DEFAULT_CAP};
use crate::partition::{Partition, UnionFind};
use crate::vset::{Combinations, VertexSet};

/// Connectivity classes over directed pairs; full and void pairs do not connect.
pub fn arc_connected_components(g: &Digraph) -> Partition {
    let n = g.n();
    let rel = g.relations();
    let mut uf = UnionFind::new(n);
    for v in 0..n {
        for u in VertexSet::from_mask(rel.directed(v)).iter() {
            if u > v {
                uf.union(v, u);
            }
        }
    }
    uf.into_partition()
}

fn interval_in(out: &[u64], inn: &[u64], n: usize, set: VertexSet) -> bool {
    let m = set.mask();
    (0..n).filter(|&x| !set.contains(x)).all(|x| {
        let o = out[x] & m;
        let i = inn[x] & m;
        (o == 0 || o == m) && (i == 0 || i == m)
    })
}

/// Every vertex outside `set` sees all of `set` in one pair state.
pub fn is_interval(g: &Digraph, set: VertexSet) -> Result<bool> {
    g.check_set(set)?;
    Ok(interval_in(g.out_rows(), &g.in_rows(), g.n(), set))
}

/// All intervals, trivial ones included, by ascending size then lexicographically.
pub fn all_intervals(g: &Digraph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > DEFAULT_CAP {
        return Err(Error::Capacity {
            what: "interval enumeration vertex count",
            size: n as u64,
            cap: DEFAULT_CAP as u64,
        });
    }
    let inn = g.in_rows();
    Ok((0..=n)
        .flat_map(|size| Combinations::new(n, size))
        .filter(|&s| interval_in(g.out_rows(), &inn, n, s))
        .collect())
}

/// Intervals with at least `min_size` members on which `keep` holds, in the order of
/// [`all_intervals`]. Subsets are pruned by `keep_partial`, which must be hereditary.
pub(crate) fn intervals_where(
    g: &Digraph,
    min_size: usize,
    keep_partial: impl Fn(VertexSet) -> bool,
    keep: impl Fn(VertexSet) -> bool,
) -> Vec<VertexSet> {
    let n = g.n();
    let inn = g.in_rows();
    let mut grown = Vec::new();
    let mut stack = alloc::vec![(VertexSet::empty(), 0usize)];
    while let Some((s, next)) = stack.pop() {
        if s.len() >= min_size && interval_in(g.out_rows(), &inn, n, s) && keep(s) {
            grown.push(s);
        }
        for v in next..n {
            let t = s.with(v);
            if keep_partial(t) {
                stack.push((t, v + 1));
            }
        }
    }
    grown.sort_by(VertexSet::cmp_size_lex);
    grown
}

/// `G_I`: the interval `set` collapsed to one vertex placed at the position of its least
/// member. Returns the contracted digraph and the index of that vertex.
pub fn contract(g: &Digraph, set: VertexSet) -> Result<(Digraph, usize)> {
    g.check_set(set)?;
    if set.is_empty() || set == g.vertices() {
        return Err(contract_err("contraction needs a proper nonempty interval"));
    }
    if !interval_in(g.out_rows(), &g.in_rows(), g.n(), set) {
        return Err(contract_err("contraction needs an interval"));
    }
    let rep = set.min().expect("nonempty");
    let kept = g.vertices().difference(set).with(rep);
    let contracted = g.induced_unchecked(kept);
    let index = kept.iter().position(|v| v == rep).expect("representative kept");
    Ok((contracted, index))
}

pub fn is_tournament(g: &Digraph) -> bool {
    let n = g.n();
    let rel = g.relations();
    (0..n).all(|v| rel.directed(v) == VertexSet::full(n).without(v).mask())
}

/// Transitive tournament: a tournament whose scores are exactly `0..n`.
pub fn is_chain(g: &Digraph) -> bool {
    if !is_tournament(g) {
        return false;
    }
    let mut seen = 0u64;
    for v in 0..g.n() {
        seen |= 1 << g.out_row(v).count_ones();
    }
    seen == VertexSet::full(g.n()).mask()
}

fn pair_counts(g: &Digraph) -> (usize, usize, usize) {
    let (mut directed, mut full, mut void) = (0, 0, 0);
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            match g.state(i, j) {
                PairState::Forward | PairState::Backward => directed += 1,
                PairState::Full => full += 1,
                PairState::Void => void += 1,
            }
        }
    }
    (directed, full, void)
}

/// Hemimorphic to `0 -> 1, 1 <-> 2`: one directed, one full and one void pair.
pub fn is_flag(g: &Digraph) -> bool {
    g.n() == 3 && pair_counts(g) == (1, 1, 1)
}

/// Hemimorphic to one of the two peaks: one neutral pair `{b, c}` and a third vertex
/// sending a single arc to both, or receiving one from both.
pub fn is_peak(g: &Digraph) -> bool {
    if g.n() != 3 {
        return false;
    }
    (0..3).any(|a| {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let (sb, sc) = (g.state(a, b), g.state(a, c));
        g.state(b, c).is_neutral() && sb.is_directed() && sb == sc
    })
}

/// Hemimorphic to a source dominating a 3-cycle: a 4-tournament with scores
/// `{3, 1, 1, 1}` or `{2, 2, 2, 0}`.
pub fn is_diamond(g: &Digraph) -> bool {
    if g.n() != 4 || !is_tournament(g) {
        return false;
    }
    let mut scores: Vec<u32> = (0..4).map(|v| g.out_row(v).count_ones()).collect();
    scores.sort_unstable();
    scores == [1, 1, 1, 3] || scores == [0, 2, 2, 2]
}

/// Directed successor of each vertex when every vertex has at most one directed
/// out-pair and at most one directed in-pair.
fn directed_functional(g: &Digraph) -> Option<(Vec<Option<usize>>, Vec<usize>)> {
    let n = g.n();
    let rel = g.relations();
    let mut succ = alloc::vec![None; n];
    let mut indeg = alloc::vec![0usize; n];
    for v in 0..n {
        let f = rel.fwd[v];
        if f.count_ones() > 1 || rel.bwd[v].count_ones() > 1 {
            return None;
        }
        if f != 0 {
            let u = f.trailing_zeros() as usize;
            succ[v] = Some(u);
            indeg[u] += 1;
        }
    }
    Some((succ, indeg))
}

fn neutral_uniform(g: &Digraph) -> Option<PairState> {
    let mut kind = None;
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let s = g.state(i, j);
            if s.is_neutral() {
                match kind {
                    None => kind = Some(s),
                    Some(k) if k != s => return None,
                    _ => {}
                }
            }
        }
    }
    Some(kind.unwrap_or(PairState::Void))
}

/// Order along a directed Hamiltonian path when the directed pairs form exactly one.
fn hamiltonian_path(g: &Digraph) -> Option<Vec<usize>> {
    let n = g.n();
    let (succ, indeg) = directed_functional(g)?;
    let start = (0..n).find(|&v| indeg[v] == 0)?;
    let mut order = alloc::vec![start];
    let mut cur = start;
    while let Some(next) = succ[cur] {
        if order.len() >= n {
            return None;
        }
        order.push(next);
        cur = next;
    }
    (order.len() == n && pair_counts(g).0 == n - 1).then_some(order)
}

/// The variant of a finite consecutivity, if `g` is one: `Full` or `Void` for the
/// state shared by all non-consecutive pairs.
pub fn consecutivity_kind(g: &Digraph) -> Option<PairState> {
    if g.n() < 3 {
        return None;
    }
    hamiltonian_path(g)?;
    neutral_uniform(g)
}

pub fn is_consecutivity(g: &Digraph) -> bool {
    consecutivity_kind(g).is_some()
}

/// A consecutivity with its neutral extremity pair replaced by an arc from the final
/// to the initial extremity: the directed pairs form one Hamiltonian cycle and the
/// remaining pairs share one neutral state.
pub fn is_cycle(g: &Digraph) -> bool {
    let n = g.n();
    if n < 3 || pair_counts(g).0 != n {
        return false;
    }
    let Some((succ, _)) = directed_functional(g) else {
        return false;
    };
    let mut cur = 0;
    for step in 0..n {
        match succ[cur] {
            Some(next) if next != 0 || step == n - 1 => cur = next,
            _ => return false,
        }
    }
    cur == 0 && neutral_uniform(g).is_some()
}

/// A chain whose extremity pair has been given another state (reversed, full or void).
/// On three vertices these are the 3-cycle and the two 3-consecutivities.
pub fn is_near_chain(g: &Digraph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    for u in 0..n {
        for v in 0..n {
            if u == v || g.state(u, v) == PairState::Forward {
                continue;
            }
            let h = g
                .with_pair_state(u, v, PairState::Forward)
                .expect("vertices in range");
            if is_chain(&h) && h.out_row(u).count_ones() as usize == n - 1 && h.out_row(v) == 0 {
                return true;
            }
        }
    }
    false
}

fn embeds_where(g: &Digraph, size: usize, pred: impl Fn(&Digraph) -> bool) -> bool {
    Combinations::new(g.n(), size).any(|x| pred(&g.induced_unchecked(x)))
}

/// Two distinct neutral pairs sharing a vertex, as `(shared, a, b)` with `a < b`.
pub fn adjacent_neutral_pairs(g: &Digraph) -> Vec<(usize, usize, usize)> {
    let mut found = Vec::new();
    for v in 0..g.n() {
        let partners: Vec<usize> = (0..g.n())
            .filter(|&u| u != v && g.state(v, u).is_neutral())
            .collect();
        for (i, &a) in partners.iter().enumerate() {
            for &b in &partners[i + 1..] {
                found.push((v, a, b));
            }
        }
    }
    found
}

/// Embeds no peak and no diamond, and has no two neutral pairs sharing a vertex.
pub fn is_prechain(g: &Digraph) -> bool {
    adjacent_neutral_pairs(g).is_empty()
        && !embeds_where(g, 3, is_peak)
        && !embeds_where(g, 4, is_diamond)
}

pub fn is_proper_prechain(g: &Digraph) -> bool {
    is_prechain(g) && !is_chain(g)
}

pub fn is_diamond_free_tournament(g: &Digraph) -> bool {
    is_tournament(g) && !embeds_where(g, 4, is_diamond)
}

/// Neutral partners of one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeutralIncidence {
    pub vertex: usize,
    pub full: VertexSet,
    pub void: VertexSet,
}

/// Per-vertex neutral partners, the structure the prechain adjacency test reads.
pub fn neutral_incidence(g: &Digraph) -> Vec<NeutralIncidence> {
    let rel = g.relations();
    let all = g.vertices();
    (0..g.n())
        .map(|v| {
            let full = VertexSet::from_mask(rel.full[v]);
            let touched = VertexSet::from_mask(rel.directed(v) | rel.full[v]).with(v);
            NeutralIncidence {
                vertex: v,
                full,
                void: all.difference(touched),
            }
        })
        .collect()
}

/// A flag of `g` located by its vertices: `apex` joins the two neutral pairs and
/// `from -> to` is the directed pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagTriple {
    pub apex: usize,
    pub from: usize,
    pub to: usize,
}

impl FlagTriple {
    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_iter([self.apex, self.from, self.to])
    }
}

/// Every 3-subset of `g` inducing a flag, in lexicographic subset order.
pub fn flag_triples(g: &Digraph) -> Vec<FlagTriple> {
    let mut out = Vec::new();
    for x in Combinations::new(g.n(), 3) {
        let m = x.to_vec();
        for a in 0..3 {
            let (b, c) = (m[(a + 1) % 3], m[(a + 2) % 3]);
            let apex = m[a];
            let s = g.state(b, c);
            if s.is_directed() && g.state(apex, b).is_neutral() && g.state(apex, c).is_neutral()
                && g.state(apex, b) != g.state(apex, c)
            {
                let (from, to) = if s == PairState::Forward { (b, c) } else { (c, b) };
                out.push(FlagTriple { apex, from, to });
            }
        }
    }
    out
}

/// Structural classes a digraph can fall into; several may hold at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructClass {
    Chain,
    Tournament,
    ProperPrechain,
    DiamondFreeTournament,
    FiniteConsecutivityFull,
    FiniteConsecutivityVoid,
    Cycle,
    NearChain,
    Flag,
    Peak,
    Diamond,
    Other,
}

impl StructClass {
    pub const fn name(self) -> &'static str {
        match self {
            StructClass::Chain => "chain",
            StructClass::Tournament => "tournament",
            StructClass::ProperPrechain => "proper_prechain",
            StructClass::DiamondFreeTournament => "diamond_free_tournament",
            StructClass::FiniteConsecutivityFull => "consecutivity_full",
            StructClass::FiniteConsecutivityVoid => "consecutivity_void",
            StructClass::Cycle => "cycle",
            StructClass::NearChain => "near_chain",
            StructClass::Flag => "flag",
            StructClass::Peak => "peak",
            StructClass::Diamond => "diamond",
            StructClass::Other => "other",
        }
    }
}

/// Every class that holds for `g`, in declaration order; `[Other]` when none does.
pub fn classify(g: &Digraph) -> Vec<StructClass> {
    let mut out = Vec::new();
    let mut push = |c, holds| {
        if holds {
            out.push(c)
        }
    };
    push(StructClass::Chain, is_chain(g));
    push(StructClass::Tournament, is_tournament(g));
    push(StructClass::ProperPrechain, is_proper_prechain(g));
    push(StructClass::DiamondFreeTournament, is_diamond_free_tournament(g));
    let cons = consecutivity_kind(g);
    push(StructClass::FiniteConsecutivityFull, cons == Some(PairState::Full));
    push(StructClass::FiniteConsecutivityVoid, cons == Some(PairState::Void));
    push(StructClass::Cycle, is_cycle(g));
    push(StructClass::NearChain, is_near_chain(g));
    push(StructClass::Flag, is_flag(g));
    push(StructClass::Peak, is_peak(g));
    push(StructClass::Diamond, is_diamond(g));
    if out.is_empty() {
        out.push(StructClass::Other);
    }
    out
}

/// Smallest order of a non-self-dual induced subdigraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CDual {
    Finite(u8),
    Infinity,
}

impl CDual {
    pub fn finite(self) -> Option<usize> {
        match self {
            CDual::Finite(k) => Some(k as usize),
            CDual::Infinity => None,
        }
    }

    /// `self >= k` with infinity above every integer.
    pub fn at_least(self, k: usize) -> bool {
        self.finite().is_none_or(|c| c >= k)
    }
}

/// Largest subset order scanned by [`c_dual`].
pub const C_DUAL_SCAN: usize = 6;

/// [`c_dual`] together with the first non-self-dual subset found.
pub fn c_dual_witness(g: &Digraph) -> (CDual, Option<VertexSet>) {
    c_dual_cached(g, &mut KeyCache::new())
}

pub(crate) fn c_dual_cached(g: &Digraph, cache: &mut KeyCache) -> (CDual, Option<VertexSet>) {
    let rows = g.out_rows();
    let dual = g.in_rows();
    for size in 3..=C_DUAL_SCAN.min(g.n()) {
        for x in Combinations::new(g.n(), size) {
            if sub_key(cache, rows, x) != sub_key(cache, &dual, x) {
                return (CDual::Finite(size as u8), Some(x));
            }
        }
    }
    (CDual::Infinity, None)
}

/// Scans subset orders 3 to 6, lexicographically within each order.
pub fn c_dual(g: &Digraph) -> CDual {
    c_dual_witness(g).0
}
