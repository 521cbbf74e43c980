//! Named small digraphs and composition helpers.

use alloc::vec::Vec;

use crate::digraph::Digraph;

fn fixed(n: usize, arcs: &[(usize, usize)]) -> Digraph {
    Digraph::from_arcs(n, arcs.iter().copied()).expect("gallery digraphs are well formed")
}

/// `0 -> 1`, `1 <-> 2`, `{0, 2}` void. Vertex 2 joins the two neutral pairs.
pub fn flag() -> Digraph {
    fixed(3, &[(0, 1), (1, 2), (2, 1)])
}

/// `0 -> 1`, `0 -> 2`, `1 <-> 2`.
pub fn peak_full() -> Digraph {
    fixed(3, &[(0, 1), (0, 2), (1, 2), (2, 1)])
}

/// `0 -> 1`, `0 -> 2`, `{1, 2}` void.
pub fn peak_void() -> Digraph {
    fixed(3, &[(0, 1), (0, 2)])
}

/// Source `0` dominating the 3-cycle `1 -> 2 -> 3 -> 1`.
pub fn diamond() -> Digraph {
    fixed(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
}

pub fn cycle3() -> Digraph {
    fixed(3, &[(0, 1), (1, 2), (2, 0)])
}

/// Transitive tournament `i -> j` for all `i < j`.
pub fn chain(n: usize) -> Digraph {
    let arcs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Digraph::from_arcs(n, arcs).expect("chain size within limits")
}

pub fn void(n: usize) -> Digraph {
    Digraph::empty(n).expect("void size within limits")
}

/// Every pair full.
pub fn complete(n: usize) -> Digraph {
    let arcs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    Digraph::from_arcs(n, arcs).expect("complete size within limits")
}

/// Path `0 -> 1 -> .. -> n-1`; other pairs full when `full`, void otherwise.
pub fn consecutivity(n: usize, full: bool) -> Digraph {
    let mut arcs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    if full {
        for i in 0..n {
            for j in i + 2..n {
                arcs.push((i, j));
                arcs.push((j, i));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("consecutivity size within limits")
}

/// Replaces vertex `i` of `outer` by `parts[i]`. Pairs across two parts take the state
/// of the corresponding pair of `outer`.
pub fn substitute(outer: &Digraph, parts: &[Digraph]) -> Digraph {
    assert_eq!(outer.n(), parts.len(), "one part per outer vertex");
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let start = *acc;
            *acc += p.n();
            Some(start)
        })
        .collect();
    let total: usize = parts.iter().map(Digraph::n).sum();
    let mut arcs = Vec::new();
    for (a, part) in parts.iter().enumerate() {
        arcs.extend(part.arcs().map(|(i, j)| (offsets[a] + i, offsets[a] + j)));
        for (b, other) in parts.iter().enumerate() {
            if a != b && outer.has_arc(a, b) {
                for i in 0..part.n() {
                    for j in 0..other.n() {
                        arcs.push((offsets[a] + i, offsets[b] + j));
                    }
                }
            }
        }
    }
    Digraph::from_arcs(total, arcs).expect("substitution size within limits")
}

/// Disjoint union; pairs across parts are void.
pub fn disjoint_union(parts: &[Digraph]) -> Digraph {
    substitute(&void(parts.len()), parts)
}

/// `first` before `second`: every vertex of `first` sends a single arc to every vertex of
/// `second`.
pub fn series(first: &Digraph, second: &Digraph) -> Digraph {
    substitute(&chain(2), &[first.clone(), second.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::PairState;

    #[test]
    fn substitution_layout() {
        let g = series(&cycle3(), &chain(2));
        assert_eq!(g.n(), 5);
        assert_eq!(g.state(0, 3), PairState::Forward);
        assert_eq!(g.state(4, 2), PairState::Backward);
        assert_eq!(g.state(2, 0), PairState::Forward);
        let u = disjoint_union(&[flag(), chain(1)]);
        assert_eq!(u.state(1, 3), PairState::Void);
        assert_eq!(u.arc_count(), 3);
    }

    #[test]
    fn consecutivity_shapes() {
        let v = consecutivity(4, false);
        assert_eq!(v.arc_count(), 3);
        let f = consecutivity(4, true);
        assert_eq!(f.state(0, 3), PairState::Full);
        assert_eq!(f.state(1, 2), PairState::Forward);
    }
}
