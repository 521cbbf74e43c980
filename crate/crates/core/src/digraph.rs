use core::fmt;

use alloc::vec::Vec;

use crate::error::{usage, Error, Result};
use crate::vset::VertexSet;

/// Hard upper bound on the vertex count; rows are stored as `u64` bitmasks.
pub const MAX_VERTICES: usize = 64;

/// Relation of an ordered vertex pair `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairState {
    /// `i -> j` only.
    Forward,
    /// `j -> i` only.
    Backward,
    /// Both arcs.
    Full,
    /// Neither arc.
    Void,
}

impl PairState {
    /// The state of `(j, i)` given the state of `(i, j)`.
    pub const fn reversed(self) -> Self {
        match self {
            PairState::Forward => PairState::Backward,
            PairState::Backward => PairState::Forward,
            s => s,
        }
    }

    pub const fn is_directed(self) -> bool {
        matches!(self, PairState::Forward | PairState::Backward)
    }

    pub const fn is_neutral(self) -> bool {
        !self.is_directed()
    }
}

/// A finite digraph on the vertices `0..n`, without loops.
///
/// Row `i` of the adjacency matrix is kept as a bitmask of out-neighbours. Values are
/// immutable; every transform returns a new digraph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
}

impl Digraph {
    /// The void digraph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count",
                size: n as u64,
                cap: MAX_VERTICES as u64,
            });
        }
        Ok(Digraph {
            n,
            out: alloc::vec![0; n],
        })
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::empty(n)?;
        for (i, j) in arcs {
            g.check_pair(i, j)?;
            g.out[i] |= 1 << j;
        }
        Ok(g)
    }

    /// Builds a digraph from out-neighbour bitmasks, one per vertex.
    pub fn from_out_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        let g = Digraph::empty(n)?;
        let range = VertexSet::full(n).mask();
        for (i, &row) in rows.iter().enumerate() {
            if row >> i & 1 == 1 {
                return Err(Error::Loop(i));
            }
            if row & !range != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: (row & !range).trailing_zeros() as usize,
                    n,
                });
            }
        }
        Ok(Digraph { out: rows, ..g })
    }

    pub(crate) fn from_rows_unchecked(out: Vec<u64>) -> Self {
        Digraph { n: out.len(), out }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.out[i] >> j & 1 == 1
    }

    pub fn out_row(&self, i: usize) -> u64 {
        self.out[i]
    }

    pub fn out_rows(&self) -> &[u64] {
        &self.out
    }

    /// In-neighbour bitmasks, one per vertex.
    pub fn in_rows(&self) -> Vec<u64> {
        let mut inn = alloc::vec![0u64; self.n];
        for (i, &row) in self.out.iter().enumerate() {
            for j in VertexSet::from_mask(row) {
                inn[j] |= 1 << i;
            }
        }
        inn
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| VertexSet::from_mask(row).iter().map(move |j| (i, j)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::Loop(i));
        }
        Ok(())
    }

    pub fn check_set(&self, x: VertexSet) -> Result<()> {
        match x.difference(self.vertices()).min() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn pair_state(&self, i: usize, j: usize) -> Result<PairState> {
        self.check_pair(i, j)?;
        Ok(self.state(i, j))
    }

    pub(crate) fn state(&self, i: usize, j: usize) -> PairState {
        match (self.out[i] >> j & 1 == 1, self.out[j] >> i & 1 == 1) {
            (true, false) => PairState::Forward,
            (false, true) => PairState::Backward,
            (true, true) => PairState::Full,
            (false, false) => PairState::Void,
        }
    }

    /// Every arc reversed.
    pub fn dual(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.in_rows(),
        }
    }

    /// The subdigraph induced by `x`, relabelled `0..|x|` in ascending original order.
    pub fn induced(&self, x: VertexSet) -> Result<Digraph> {
        self.check_set(x)?;
        Ok(self.induced_unchecked(x))
    }

    pub(crate) fn induced_unchecked(&self, x: VertexSet) -> Digraph {
        let members = x.to_vec();
        let out = members
            .iter()
            .map(|&u| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.out[u] >> w & 1 == 1)
                    .fold(0u64, |row, (c, _)| row | 1 << c)
            })
            .collect();
        Digraph::from_rows_unchecked(out)
    }

    fn pairs_where(&self, keep: impl Fn(PairState) -> bool) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if keep(self.state(i, j)) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// Unordered pairs `(i, j)`, `i < j`, carrying exactly one arc; lexicographic order.
    pub fn directed_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_where(PairState::is_directed)
    }

    pub fn full_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_where(|s| s == PairState::Full)
    }

    pub fn void_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_where(|s| s == PairState::Void)
    }

    /// Vertex `v` of `self` becomes vertex `perm[v]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        if perm.len() != self.n {
            return Err(usage("permutation length differs from the vertex count"));
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_vertex(p)?;
            seen |= 1 << p;
        }
        if seen != self.vertices().mask() {
            return Err(usage("relabelling is not a permutation"));
        }
        let mut out = alloc::vec![0u64; self.n];
        for (i, &row) in self.out.iter().enumerate() {
            for j in VertexSet::from_mask(row) {
                out[perm[i]] |= 1 << perm[j];
            }
        }
        Ok(Digraph::from_rows_unchecked(out))
    }

    /// A copy in which the pair `{i, j}` has state `state` when read as `(i, j)`.
    pub fn with_pair_state(&self, i: usize, j: usize, state: PairState) -> Result<Digraph> {
        self.check_pair(i, j)?;
        let mut out = self.out.clone();
        let (ij, ji) = match state {
            PairState::Forward => (true, false),
            PairState::Backward => (false, true),
            PairState::Full => (true, true),
            PairState::Void => (false, false),
        };
        out[i] = (out[i] & !(1 << j)) | (ij as u64) << j;
        out[j] = (out[j] & !(1 << i)) | (ji as u64) << i;
        Ok(Digraph::from_rows_unchecked(out))
    }

    /// Every arc with both ends in `s` reversed; `s` is clipped to the vertex range.
    pub fn reverse_within(&self, s: VertexSet) -> Digraph {
        let s = s.intersection(self.vertices()).mask();
        let inn = self.in_rows();
        let out = (0..self.n)
            .map(|i| {
                if s >> i & 1 == 1 {
                    (self.out[i] & !s) | (inn[i] & s)
                } else {
                    self.out[i]
                }
            })
            .collect();
        Digraph::from_rows_unchecked(out)
    }

    /// Neighbourhoods split by pair state: `(forward, backward, full)` masks of `v`.
    pub(crate) fn relations(&self) -> Relations {
        let inn = self.in_rows();
        let mut fwd = Vec::with_capacity(self.n);
        let mut bwd = Vec::with_capacity(self.n);
        let mut full = Vec::with_capacity(self.n);
        for v in 0..self.n {
            fwd.push(self.out[v] & !inn[v]);
            bwd.push(inn[v] & !self.out[v]);
            full.push(self.out[v] & inn[v]);
        }
        Relations { fwd, bwd, full }
    }
}

pub(crate) struct Relations {
    pub fwd: Vec<u64>,
    pub bwd: Vec<u64>,
    pub full: Vec<u64>,
}

impl Relations {
    pub(crate) fn directed(&self, v: usize) -> u64 {
        self.fwd[v] | self.bwd[v]
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=", self.n)?;
        f.debug_list().entries(self.arcs()).finish()?;
        write!(f, ")")
    }
}
