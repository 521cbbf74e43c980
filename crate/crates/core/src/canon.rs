//! Canonical labelling by colour refinement and individualisation.
//!
//! Vertices are split by how many forward, backward and full neighbours they have in
//! every cell until the ordered partition is equitable; the search then individualises
//! each vertex of the first smallest non-singleton cell. The canonical matrix is the
//! lexicographically least row-major adjacency matrix over the leaves of that tree.
//! Subtrees that are images of an explored sibling under an automorphism fixing the
//! current path are skipped; automorphisms are harvested from equal leaves.

use core::fmt;

use alloc::string::String;
use alloc::vec::Vec;

use crate::digraph::{Digraph, Relations};
use crate::error::{usage, Error, Result};
use crate::partition::UnionFind;

/// Order-independent fingerprint of a digraph: the minimal row-major adjacency matrix
/// found by the canonical search, with the vertex count.
///
/// Keys compare by vertex count first, then by the matrix bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major matrix bits packed most significant bit first, zero padded to whole
    /// bytes, as lowercase hex.
    pub fn to_hex(&self) -> String {
        const DIGITS: &[u8; 16] = b"0123456789abcdef";
        let bytes = (self.n * self.n).div_ceil(8);
        let mut s = String::with_capacity(2 * bytes);
        for b in 0..bytes {
            let byte = (self.bits[b / 8] >> (56 - 8 * (b % 8))) as u8;
            s.push(DIGITS[(byte >> 4) as usize] as char);
            s.push(DIGITS[(byte & 0xf) as usize] as char);
        }
        s
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let bytes = (n * n).div_ceil(8);
        if hex.len() != 2 * bytes {
            return Err(usage("hex key length does not match the vertex count"));
        }
        let mut bits = alloc::vec![0u64; (n * n).div_ceil(64)];
        for b in 0..bytes {
            let byte = u8::from_str_radix(&hex[2 * b..2 * b + 2], 16)
                .map_err(|_| usage("hex key contains a non-hex digit"))?;
            bits[b / 8] |= (byte as u64) << (56 - 8 * (b % 8));
        }
        let key = CanonicalKey { n, bits };
        key.to_digraph()?;
        Ok(key)
    }

    /// The digraph whose adjacency matrix is the key's matrix: the class representative.
    pub fn to_digraph(&self) -> Result<Digraph> {
        let n = self.n;
        let mut rows = alloc::vec![0u64; n];
        for (r, row) in rows.iter_mut().enumerate() {
            for c in 0..n {
                let t = r * n + c;
                if self.bits[t / 64] >> (63 - t % 64) & 1 == 1 {
                    *row |= 1 << c;
                }
            }
        }
        Digraph::from_out_rows(rows)
    }

    /// For `n <= 8`: the matrix as an integer, first bit most significant.
    pub fn small_value(&self) -> Option<u64> {
        match self.n {
            0 | 1 => Some(0),
            n if n <= 8 => Some(self.bits[0] >> (64 - n * n)),
            _ => None,
        }
    }

    #[cfg(test)]
    pub(crate) fn from_small_value(n: usize, value: u64) -> Self {
        let bits = match n {
            0 => Vec::new(),
            1 => alloc::vec![0],
            _ => alloc::vec![value << (64 - n * n)],
        };
        CanonicalKey { n, bits }
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey(n={}, {})", self.n, self.to_hex())
    }
}

pub(crate) fn matrix_bits(out: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut bits = alloc::vec![0u64; (n * n).div_ceil(64)];
    let mut t = 0;
    for &u in order {
        let row = out[u];
        for &w in order {
            if row >> w & 1 == 1 {
                bits[t / 64] |= 1 << (63 - t % 64);
            }
            t += 1;
        }
    }
    bits
}

/// Result of the canonical search: `order[p]` is the vertex placed at position `p`.
pub(crate) struct Labeling {
    pub order: Vec<usize>,
    pub bits: Vec<u64>,
}

struct Search<'a> {
    out: &'a [u64],
    rel: Relations,
    n: usize,
    first: Option<(Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
    sig: Vec<u32>,
}

impl Search<'_> {
    fn refine(&mut self, cells: &mut Vec<Vec<usize>>) {
        let n = self.n;
        loop {
            let nc = cells.len();
            if nc == n {
                return;
            }
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            self.sig.resize(n * nc, 0);
            for cell in cells.iter().filter(|c| c.len() > 1) {
                for &v in cell {
                    let (f, b, u) = (self.rel.fwd[v], self.rel.bwd[v], self.rel.full[v]);
                    for (c, &m) in masks.iter().enumerate() {
                        self.sig[v * nc + c] = (f & m).count_ones() << 16
                            | (b & m).count_ones() << 8
                            | (u & m).count_ones();
                    }
                }
            }
            let sig = &self.sig;
            let row = |v: usize| &sig[v * nc..(v + 1) * nc];
            let mut next = Vec::with_capacity(n);
            for mut cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                cell.sort_by(|&a, &b| row(a).cmp(row(b)));
                let mut start = 0;
                for i in 1..=cell.len() {
                    if i == cell.len() || row(cell[i]) != row(cell[start]) {
                        next.push(cell[start..i].to_vec());
                        start = i;
                    }
                }
            }
            let stable = next.len() == nc;
            *cells = next;
            if stable {
                return;
            }
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let bits = matrix_bits(self.out, &order);
        let Some((first_bits, first_order)) = &self.first else {
            self.best = Some((bits.clone(), order.clone()));
            self.first = Some((bits, order));
            return;
        };
        let (best_bits, best_order) = self.best.as_ref().expect("best set with first");
        let reference = if bits == *first_bits {
            Some(first_order)
        } else if bits == *best_bits {
            Some(best_order)
        } else {
            None
        };
        if let Some(reference) = reference {
            let mut gen = alloc::vec![0; self.n];
            for (p, &v) in reference.iter().enumerate() {
                gen[v] = order[p];
            }
            if gen.iter().enumerate().any(|(i, &x)| i != x) {
                self.generators.push(gen);
            }
        } else if bits < *best_bits {
            self.best = Some((bits, order));
        }
    }

    fn in_explored_orbit(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let mut uf: Option<UnionFind> = None;
        for gen in &self.generators {
            if path.iter().all(|&p| gen[p] == p) {
                let uf = uf.get_or_insert_with(|| UnionFind::new(self.n));
                for (x, &y) in gen.iter().enumerate() {
                    uf.union(x, y);
                }
            }
        }
        match uf {
            Some(mut uf) => explored.iter().any(|&u| uf.same(u, v)),
            None => false,
        }
    }

    fn run(&mut self, mut cells: Vec<Vec<usize>>, path: &mut Vec<usize>) {
        self.refine(&mut cells);
        if cells.len() == self.n {
            self.leaf(cells.into_iter().map(|c| c[0]).collect());
            return;
        }
        let (t, _) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|&(i, c)| (c.len(), i))
            .expect("non-discrete partition has a non-singleton cell");
        let target = cells[t].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored, path) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..t].iter().cloned());
            child.push(alloc::vec![v]);
            child.push(target.iter().copied().filter(|&u| u != v).collect());
            child.extend(cells[t + 1..].iter().cloned());
            path.push(v);
            self.run(child, path);
            path.pop();
            explored.push(v);
        }
    }
}

/// Canonical labelling of `g`; with `colors`, vertices of smaller colour come first and
/// only colour-preserving orderings are considered.
pub(crate) fn labeling(g: &Digraph, colors: Option<&[u32]>) -> Labeling {
    let n = g.n();
    let cells: Vec<Vec<usize>> = match colors {
        None if n == 0 => Vec::new(),
        None => alloc::vec![(0..n).collect()],
        Some(colors) => {
            let mut values: Vec<u32> = colors.to_vec();
            values.sort_unstable();
            values.dedup();
            values
                .iter()
                .map(|&c| (0..n).filter(|&v| colors[v] == c).collect())
                .collect()
        }
    };
    let mut search = Search {
        out: g.out_rows(),
        rel: g.relations(),
        n,
        first: None,
        best: None,
        generators: Vec::new(),
        sig: Vec::new(),
    };
    search.run(cells, &mut Vec::new());
    let (bits, order) = search.best.expect("the search reaches at least one leaf");
    Labeling { order, bits }
}

pub(crate) fn key_of(g: &Digraph) -> CanonicalKey {
    CanonicalKey {
        n: g.n(),
        bits: labeling(g, None).bits,
    }
}

/// Lexicographically least row-major matrix over all `n!` orderings. Reference path for
/// differential tests; exponential.
pub fn brute_force_key(g: &Digraph) -> Result<CanonicalKey> {
    const LIMIT: usize = 9;
    let n = g.n();
    if n > LIMIT {
        return Err(Error::Capacity {
            what: "brute-force canonical key vertex count",
            size: n as u64,
            cap: LIMIT as u64,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = matrix_bits(g.out_rows(), &order);
    // Heap's algorithm, iterative form.
    let mut c = alloc::vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            let bits = matrix_bits(g.out_rows(), &order);
            if bits < best {
                best = bits;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalKey { n, bits: best })
}
