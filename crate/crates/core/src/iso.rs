//! Isomorphism, hemimorphism, self-duality and embedding.

use alloc::vec::Vec;

use hashbrown::HashMap;
use rustc_hash::FxBuildHasher;

pub use crate::canon::{brute_force_key, CanonicalKey};
use crate::canon::{key_of, labeling};
use crate::digraph::Digraph;
use crate::error::{usage, Error, Result};
use crate::vset::{Combinations, VertexSet};

/// Default vertex cap for the exponential procedures of this crate.
pub const DEFAULT_CAP: usize = 24;

/// Canonical key of `g`; fails with a capacity error above [`DEFAULT_CAP`] vertices.
pub fn canonical_key(g: &Digraph) -> Result<CanonicalKey> {
    canonical_key_with_cap(g, DEFAULT_CAP)
}

pub fn canonical_key_with_cap(g: &Digraph, cap: usize) -> Result<CanonicalKey> {
    if g.n() > cap {
        return Err(Error::Capacity {
            what: "canonical key vertex count",
            size: g.n() as u64,
            cap: cap as u64,
        });
    }
    Ok(key_of(g))
}

/// Vertex placed at each position of the canonical matrix: relabelling `g` so that
/// `order[p]` becomes `p` yields the class representative.
pub fn canonical_order(g: &Digraph) -> Result<Vec<usize>> {
    canonical_key(g)?;
    Ok(labeling(g, None).order)
}

fn degree_profile(g: &Digraph) -> Vec<(u32, u32)> {
    let inn = g.in_rows();
    let mut p: Vec<(u32, u32)> = (0..g.n())
        .map(|v| (g.out_row(v).count_ones(), inn[v].count_ones()))
        .collect();
    p.sort_unstable();
    p
}

pub fn is_isomorphic(g1: &Digraph, g2: &Digraph) -> bool {
    if g1.n() != g2.n() || g1.arc_count() != g2.arc_count() {
        return false;
    }
    if degree_profile(g1) != degree_profile(g2) {
        return false;
    }
    key_of(g1) == key_of(g2)
}

pub fn is_hemimorphic(g1: &Digraph, g2: &Digraph) -> bool {
    is_isomorphic(g1, g2) || is_isomorphic(g1, &g2.dual())
}

pub fn is_self_dual(g: &Digraph) -> bool {
    is_isomorphic(g, &g.dual())
}

/// Whether some `|h|`-subset of `g` induces a copy of `h`.
pub fn embeds(h: &Digraph, g: &Digraph) -> bool {
    if h.n() > g.n() {
        return false;
    }
    let target = key_of(h);
    Combinations::new(g.n(), h.n()).any(|x| key_of(&g.induced_unchecked(x)) == target)
}

/// Whether an isomorphism from `g1` onto `g2` maps `v1` to `v2`.
pub fn iso_with_fixed_point(g1: &Digraph, g2: &Digraph, v1: usize, v2: usize) -> Result<bool> {
    if g1.n() != g2.n() {
        return Err(usage("fixed-point isomorphism needs digraphs of equal order"));
    }
    for (g, v) in [(g1, v1), (g2, v2)] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if g1.arc_count() != g2.arc_count() {
        return Ok(false);
    }
    let colours = |v: usize| -> Vec<u32> { (0..g1.n()).map(|u| (u == v) as u32).collect() };
    let a = labeling(g1, Some(&colours(v1)));
    let b = labeling(g2, Some(&colours(v2)));
    Ok(a.bits == b.bits)
}

/// Packs the subdigraph induced by `members` (at most 8 vertices) as a row-major
/// bit string, first bit most significant.
pub(crate) fn pack_induced(rows: &[u64], members: &[usize]) -> u64 {
    let mut v = 0u64;
    for &u in members {
        let r = rows[u];
        for &w in members {
            v = v << 1 | (r >> w & 1);
        }
    }
    v
}

/// Memo from small packed matrices (up to 8 vertices) to their canonical value.
///
/// Not shared: instantiate one per worker. The memo is dropped wholesale once it holds
/// [`KeyCache::LIMIT`] entries.
#[derive(Default)]
pub struct KeyCache {
    map: HashMap<(u8, u64), u64, FxBuildHasher>,
}

impl KeyCache {
    pub const LIMIT: usize = 1 << 22;

    pub fn new() -> Self {
        KeyCache::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Canonical value of the `m`-vertex digraph packed in `packed`.
    pub(crate) fn small(&mut self, m: usize, packed: u64) -> u64 {
        if m <= 1 {
            return 0;
        }
        if self.map.len() >= Self::LIMIT {
            self.map.clear();
        }
        *self.map.entry((m as u8, packed)).or_insert_with(|| {
            let mut rows = alloc::vec![0u64; m];
            for (r, row) in rows.iter_mut().enumerate() {
                for c in 0..m {
                    if packed >> (m * m - 1 - (r * m + c)) & 1 == 1 {
                        *row |= 1 << c;
                    }
                }
            }
            let g = Digraph::from_rows_unchecked(rows);
            key_of(&g).small_value().expect("small digraph")
        })
    }
}

/// Keys of induced subdigraphs, memoised for up to 8 vertices.
pub(crate) enum SubKey {
    Small(u64),
    Large(CanonicalKey),
}

impl PartialEq for SubKey {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SubKey::Small(a), SubKey::Small(b)) => a == b,
            (SubKey::Large(a), SubKey::Large(b)) => a == b,
            _ => false,
        }
    }
}

pub(crate) fn sub_key(cache: &mut KeyCache, rows: &[u64], x: VertexSet) -> SubKey {
    let members = x.to_vec();
    if members.len() <= 8 {
        SubKey::Small(cache.small(members.len(), pack_induced(rows, &members)))
    } else {
        let g = Digraph::from_rows_unchecked(rows.to_vec()).induced_unchecked(x);
        SubKey::Large(key_of(&g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn key_examples() {
        let c = gallery::cycle3();
        let rotated = Digraph::from_arcs(3, [(1, 2), (2, 0), (0, 1)]).unwrap();
        assert_eq!(canonical_key(&c), canonical_key(&rotated));
        let flag = gallery::flag();
        assert_ne!(canonical_key(&flag), canonical_key(&flag.dual()));
        let tt = gallery::chain(3);
        assert_eq!(canonical_key(&tt), canonical_key(&tt.dual()));
        assert!(canonical_key(&gallery::void(25)).is_err());
        assert!(canonical_key_with_cap(&gallery::void(25), 30).is_ok());
    }

    #[test]
    fn isomorphism_examples() {
        let c = gallery::cycle3();
        assert!(is_isomorphic(&c, &c.relabel(&[2, 0, 1]).unwrap()));
        assert!(!is_isomorphic(&gallery::flag(), &gallery::flag().dual()));
        assert!(!is_isomorphic(&gallery::diamond(), &gallery::diamond().dual()));
        assert!(is_hemimorphic(&gallery::flag(), &gallery::flag().dual()));
        assert!(!is_hemimorphic(&gallery::chain(3), &gallery::cycle3()));
        assert!(is_hemimorphic(&gallery::diamond(), &gallery::diamond().dual()));
    }

    #[test]
    fn self_duality_examples() {
        assert!(is_self_dual(&gallery::cycle3()));
        assert!(!is_self_dual(&gallery::flag()));
        assert!(!is_self_dual(&gallery::peak_full()));
        assert!(!is_self_dual(&gallery::peak_void()));
    }

    #[test]
    fn embedding_examples() {
        assert!(embeds(&gallery::cycle3(), &gallery::diamond()));
        assert!(!embeds(&gallery::diamond(), &gallery::chain(4)));
        assert!(embeds(&gallery::flag(), &gallery::flag()));
        assert!(!embeds(&gallery::chain(5), &gallery::chain(4)));
    }

    #[test]
    fn fixed_point_examples() {
        let c = gallery::cycle3();
        assert_eq!(iso_with_fixed_point(&c, &c, 0, 1), Ok(true));
        let f = gallery::flag();
        assert_eq!(iso_with_fixed_point(&f, &f, 0, 2), Ok(false));
        let t = gallery::chain(3);
        assert_eq!(iso_with_fixed_point(&t, &t, 0, 0), Ok(true));
        assert_eq!(iso_with_fixed_point(&t, &t, 0, 2), Ok(false));
        assert!(iso_with_fixed_point(&t, &t, 0, 3).is_err());
        assert!(iso_with_fixed_point(&t, &gallery::chain(4), 0, 0).is_err());
    }

    #[test]
    fn canonical_order_reaches_the_representative() {
        let g = gallery::diamond().relabel(&[2, 0, 3, 1]).unwrap();
        let order = canonical_order(&g).unwrap();
        let mut perm = alloc::vec![0; 4];
        for (p, &v) in order.iter().enumerate() {
            perm[v] = p;
        }
        let relabelled = g.relabel(&perm).unwrap();
        assert_eq!(relabelled, canonical_key(&g).unwrap().to_digraph().unwrap());
    }

    #[test]
    fn cache_matches_direct_keys() {
        let mut cache = KeyCache::new();
        let g = gallery::diamond();
        let rows = g.out_rows();
        for x in Combinations::new(4, 3) {
            let direct = key_of(&g.induced_unchecked(x)).small_value().unwrap();
            match sub_key(&mut cache, rows, x) {
                SubKey::Small(v) => assert_eq!(v, direct),
                SubKey::Large(_) => unreachable!(),
            }
        }
        assert!(!cache.is_empty());
    }
}
