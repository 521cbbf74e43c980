use core::fmt;

use alloc::vec::Vec;

use crate::error::{contract, Result};
use crate::vset::VertexSet;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: alloc::vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when `x` and `y` were in different sets.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut by_root = alloc::vec![0u64; n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r] |= 1 << v;
        }
        let classes = by_root
            .into_iter()
            .filter(|&m| m != 0)
            .map(VertexSet::from_mask)
            .collect();
        Partition::from_sorted(classes)
    }
}

/// Disjoint nonempty vertex classes covering `0..n`, ordered by least member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    classes: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, mut classes: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::empty();
        for &c in &classes {
            if c.is_empty() {
                return Err(contract("partition classes must be nonempty"));
            }
            if !c.is_disjoint(seen) {
                return Err(contract("partition classes must be disjoint"));
            }
            seen = seen.union(c);
        }
        if seen != VertexSet::full(n) {
            return Err(contract("partition classes must cover the vertex set"));
        }
        classes.sort_by_key(|c| c.min());
        Ok(Partition { classes })
    }

    fn from_sorted(mut classes: Vec<VertexSet>) -> Self {
        classes.sort_by_key(|c| c.min());
        Partition { classes }
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            classes: (0..n).map(VertexSet::singleton).collect(),
        }
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, v: usize) -> Option<VertexSet> {
        self.classes.iter().copied().find(|c| c.contains(v))
    }

    pub fn contains_class(&self, s: VertexSet) -> bool {
        self.classes.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.classes.iter().copied()
    }

    /// Sorted lists of sorted members.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.to_vec()).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.classes.iter()).finish()
    }
}
