//! Isomorphism classes of small digraphs and tournaments, and orbit counts.

use alloc::vec::Vec;

use hashbrown::HashSet;
use rustc_hash::FxBuildHasher;

use crate::canon::key_of;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::iso::CanonicalKey;

pub const MAX_DIGRAPH_ORDER: usize = 6;
pub const MAX_TOURNAMENT_ORDER: usize = 8;

fn too_large(what: &'static str, n: usize, cap: usize) -> Error {
    Error::Capacity {
        what,
        size: n as u64,
        cap: cap as u64,
    }
}

/// Adds a vertex to every representative in each of the given ways, `(arcs into the new
/// vertex, arcs out of it)`, then keeps one digraph per class, sorted by key.
fn extend(reps: &[Digraph], patterns: &[(u64, u64)]) -> Vec<Digraph> {
    let mut seen: HashSet<CanonicalKey, FxBuildHasher> = HashSet::default();
    let mut out = Vec::new();
    for g in reps {
        let n = g.n();
        for &(to_new, from_new) in patterns {
            let mut rows = g.out_rows().to_vec();
            for (v, row) in rows.iter_mut().enumerate() {
                if to_new >> v & 1 == 1 {
                    *row |= 1 << n;
                }
            }
            rows.push(from_new);
            let h = Digraph::from_rows_unchecked(rows);
            let key = key_of(&h);
            if seen.insert(key.clone()) {
                out.push((key, h));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter()
        .map(|(k, _)| k.to_digraph().expect("keys decode"))
        .collect()
}

fn classes(n: usize, patterns: impl Fn(usize) -> Vec<(u64, u64)>) -> Vec<Digraph> {
    if n == 0 {
        return alloc::vec![Digraph::empty(0).expect("small")];
    }
    let mut reps = alloc::vec![Digraph::empty(1).expect("small")];
    for m in 1..n {
        reps = extend(&reps, &patterns(m));
    }
    reps
}

/// One representative per class of `n`-vertex digraphs, ascending by key, `n <= 6`.
///
/// Each representative is the class's canonical labelling.
pub fn enumerate_digraphs(n: usize) -> Result<Vec<Digraph>> {
    if n > MAX_DIGRAPH_ORDER {
        return Err(too_large("digraph enumeration order", n, MAX_DIGRAPH_ORDER));
    }
    Ok(classes(n, |m| {
        let mut pats = Vec::with_capacity(1 << (2 * m));
        for to_new in 0..1u64 << m {
            for from_new in 0..1u64 << m {
                pats.push((to_new, from_new));
            }
        }
        pats
    }))
}

/// One representative per class of `n`-vertex tournaments, ascending by key, `n <= 8`.
pub fn enumerate_tournaments(n: usize) -> Result<Vec<Digraph>> {
    if n > MAX_TOURNAMENT_ORDER {
        return Err(too_large(
            "tournament enumeration order",
            n,
            MAX_TOURNAMENT_ORDER,
        ));
    }
    Ok(classes(n, |m| {
        let all = (1u64 << m) - 1;
        (0..1u64 << m).map(|to_new| (to_new, all & !to_new)).collect()
    }))
}

/// Every labelled digraph on `n <= 4` vertices.
pub fn labelled_digraphs(n: usize) -> Result<Vec<Digraph>> {
    if n > 4 {
        return Err(too_large("labelled digraph listing order", n, 4));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 1u64 << (2 * pairs.len());
    Ok((0..total)
        .map(|code| {
            let mut rows = alloc::vec![0u64; n];
            for (p, &(i, j)) in pairs.iter().enumerate() {
                let s = code >> (2 * p) & 3;
                if s & 1 == 1 {
                    rows[i] |= 1 << j;
                }
                if s & 2 == 2 {
                    rows[j] |= 1 << i;
                }
            }
            Digraph::from_rows_unchecked(rows)
        })
        .collect())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = alloc::vec![0usize; n];
    out.push(p.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Orbits of `perm` on ordered pairs of distinct vertices; also reports whether some
/// orbit holds a pair and its reverse.
fn pair_orbits(perm: &[usize]) -> (u32, bool) {
    let n = perm.len();
    let mut seen = alloc::vec![false; n * n];
    let mut orbits = 0;
    let mut self_reverse = false;
    for i in 0..n {
        for j in 0..n {
            if i == j || seen[i * n + j] {
                continue;
            }
            orbits += 1;
            let (mut a, mut b) = (i, j);
            while !seen[a * n + b] {
                seen[a * n + b] = true;
                if a == j && b == i {
                    self_reverse = true;
                }
                (a, b) = (perm[a], perm[b]);
            }
        }
    }
    (orbits, self_reverse)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of digraph classes on `n <= 9` vertices by orbit counting.
pub fn burnside_digraph_count(n: usize) -> Result<u128> {
    if n > 9 {
        return Err(too_large("orbit counting order", n, 9));
    }
    let total: u128 = permutations(n)
        .iter()
        .map(|p| 1u128 << pair_orbits(p).0)
        .sum();
    Ok(total / factorial(n))
}

/// Number of tournament classes on `n <= 9` vertices by orbit counting.
pub fn burnside_tournament_count(n: usize) -> Result<u128> {
    if n > 9 {
        return Err(too_large("orbit counting order", n, 9));
    }
    let total: u128 = permutations(n)
        .iter()
        .map(|p| match pair_orbits(p) {
            (_, true) => 0,
            (orbits, false) => 1u128 << (orbits / 2),
        })
        .sum();
    Ok(total / factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_self_dual;

    #[test]
    fn small_censuses() {
        assert_eq!(enumerate_digraphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_digraphs(2).unwrap().len(), 3);
        assert_eq!(enumerate_digraphs(3).unwrap().len(), 16);
        assert_eq!(enumerate_tournaments(4).unwrap().len(), 4);
        assert_eq!(burnside_digraph_count(3).unwrap(), 16);
        assert_eq!(burnside_tournament_count(5).unwrap(), 12);
        assert!(enumerate_digraphs(7).is_err());
        assert!(enumerate_tournaments(9).is_err());
    }

    #[test]
    fn labelled_listing_dedups_to_the_census() {
        for n in 0..=4 {
            let mut keys: Vec<CanonicalKey> =
                labelled_digraphs(n).unwrap().iter().map(key_of).collect();
            keys.sort();
            keys.dedup();
            let reps: Vec<CanonicalKey> =
                enumerate_digraphs(n).unwrap().iter().map(key_of).collect();
            assert_eq!(keys, reps, "n={n}");
        }
    }

    #[test]
    fn non_self_dual_triples() {
        let count = enumerate_digraphs(3)
            .unwrap()
            .iter()
            .filter(|g| !is_self_dual(g))
            .count();
        assert_eq!(count, 6);
    }
}
