use proptest::prelude::*;

use hemireco_core::decide::{report, verdict_from, MAX_K, MIN_K};
use hemireco_core::hypo::{
    are_leq_k_hemimorphic, are_leq_k_hypomorphic, difference_classes, Relation,
};
use hemireco_core::iso::{brute_force_key, canonical_key, embeds, is_isomorphic};
use hemireco_core::structure::{
    arc_connected_components, is_interval, is_tournament,
};
use hemireco_core::witness::{
    all_flip_mates, naive_find_hypomorphic_mate, naive_find_witness,
    oracle_find_hypomorphic_mate_with_budget, oracle_find_witness_with_budget, verify_witness,
};
use hemireco_core::{Condition, Digraph, VertexSet};

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<u64>(), n).prop_map(move |raw| {
            let rows = raw
                .iter()
                .enumerate()
                .map(|(i, r)| r & ((1u64 << n) - 1) & !(1 << i))
                .collect();
            Digraph::from_out_rows(rows).unwrap()
        })
    })
}

fn tournament(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut arcs = Vec::new();
                let mut b = bits.iter();
                for i in 0..n {
                    for j in i + 1..n {
                        arcs.push(if *b.next().unwrap() { (i, j) } else { (j, i) });
                    }
                }
                Digraph::from_arcs(n, arcs).unwrap()
            },
        )
    })
}

fn with_perm(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    digraph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

#[test]
fn both_keys_split_labelled_digraphs_alike() {
    use std::collections::HashMap;
    for n in 0..=4 {
        let mut classes: HashMap<_, _> = HashMap::new();
        for g in hemireco_core::enumerate::labelled_digraphs(n).unwrap() {
            let a = canonical_key(&g).unwrap();
            let b = brute_force_key(&g).unwrap();
            assert_eq!(*classes.entry(a).or_insert_with(|| b.clone()), b);
        }
        let mut brute: Vec<_> = classes.values().cloned().collect();
        brute.sort();
        brute.dedup();
        assert_eq!(brute.len(), classes.len(), "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn key_is_relabelling_invariant((g, perm) in with_perm(9)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn key_decodes_to_an_isomorphic_digraph(g in digraph(9)) {
        let back = canonical_key(&g).unwrap().to_digraph().unwrap();
        prop_assert!(is_isomorphic(&g, &back));
        prop_assert_eq!(canonical_key(&back).unwrap(), canonical_key(&g).unwrap());
    }

    #[test]
    fn refinement_and_brute_force_keys_agree_on_classes((g, perm) in with_perm(6), h in digraph(6)) {
        let g2 = g.relabel(&perm).unwrap();
        prop_assert_eq!(brute_force_key(&g).unwrap(), brute_force_key(&g2).unwrap());
        if g.n() == h.n() {
            let same = canonical_key(&g).unwrap() == canonical_key(&h).unwrap();
            prop_assert_eq!(same, brute_force_key(&g).unwrap() == brute_force_key(&h).unwrap());
        }
    }

    #[test]
    fn dual_is_an_involution(g in digraph(10)) {
        prop_assert_eq!(g.dual().dual(), g.clone());
        prop_assert_eq!(g.dual().arc_count(), g.arc_count());
    }

    #[test]
    fn induced_commutes_with_dual(g in digraph(10), mask in any::<u64>()) {
        let x = VertexSet::from_mask(mask & g.vertices().mask());
        prop_assert_eq!(g.induced(x).unwrap().dual(), g.dual().induced(x).unwrap());
    }

    #[test]
    fn pair_states_partition_the_pairs(g in digraph(12)) {
        let n = g.n();
        let total = g.directed_pairs().len() + g.full_pairs().len() + g.void_pairs().len();
        prop_assert_eq!(total, n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn induced_subdigraphs_embed(g in digraph(7), mask in any::<u64>()) {
        let x = VertexSet::from_mask(mask & g.vertices().mask());
        let h = g.induced(x).unwrap();
        prop_assert!(embeds(&h, &g));
        let bigger = hemireco_core::gallery::disjoint_union(&[g.clone(), Digraph::empty(1).unwrap()]);
        prop_assert!(embeds(&g, &bigger));
    }

    #[test]
    fn dual_differences_are_the_components(g in digraph(10)) {
        prop_assert_eq!(difference_classes(&g, &g.dual()).unwrap(), arc_connected_components(&g));
    }

    #[test]
    fn difference_classes_of_hypomorphic_flips_are_intervals(g in digraph(6)) {
        for h in all_flip_mates(&g, 3, Relation::Isomorphic, 1 << 16).unwrap() {
            prop_assert!(are_leq_k_hypomorphic(&g, &h, 3).unwrap());
            let classes = difference_classes(&g, &h).unwrap();
            for c in classes.iter() {
                prop_assert!(is_interval(&g, c).unwrap());
                prop_assert!(is_interval(&h, c).unwrap());
                let sub = g.induced(c).unwrap();
                prop_assert_eq!(arc_connected_components(&sub).len(), 1);
            }
        }
    }

    #[test]
    fn flip_mates_are_complete(g in digraph(5)) {
        let m = g.directed_pairs().len();
        let mates = all_flip_mates(&g, 3, Relation::Hemimorphic, 1 << 16).unwrap();
        let pairs = g.directed_pairs();
        let mut expected = 0;
        for mask in 0..1u64 << m {
            let mut h = g.clone();
            for (p, &(i, j)) in pairs.iter().enumerate() {
                if mask >> p & 1 == 1 {
                    h = h.reverse_within(VertexSet::from_iter([i, j]));
                }
            }
            if are_leq_k_hemimorphic(&g, &h, 3).unwrap() {
                expected += 1;
                prop_assert!(mates.contains(&h));
            }
        }
        prop_assert_eq!(mates.len(), expected);
    }

    #[test]
    fn oracle_agrees_with_naive_search(g in digraph(5), k in 2usize..=6) {
        let fast = oracle_find_witness_with_budget(&g, k, 1 << 16).unwrap().witness;
        let slow = naive_find_witness(&g, k, 1 << 16).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        let fast = oracle_find_hypomorphic_mate_with_budget(&g, k, 1 << 16).unwrap();
        let slow = naive_find_hypomorphic_mate(&g, k, 1 << 16).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
    }

    #[test]
    fn witnesses_carry_valid_certificates(g in digraph(5), k in 2usize..=4) {
        let w = oracle_find_witness_with_budget(&g, k, 1 << 16).unwrap();
        if let Some(h) = &w.witness {
            let cert = verify_witness(&g, h, k).unwrap();
            prop_assert!(cert.is_witness());
            prop_assert_eq!(Some(cert), w.certificate);
        }
    }

    #[test]
    fn verdicts_are_monotone_in_k(g in tournament(9)) {
        let rep = report(&g);
        let mut seen_hr = false;
        for k in MIN_K..=MAX_K {
            let v = verdict_from(&rep, k).unwrap();
            prop_assert!(!seen_hr || v.half_reconstructible, "k={}", k);
            seen_hr |= v.half_reconstructible;
        }
    }

    #[test]
    fn exclusive_condition_pairs(g in digraph(9)) {
        let rep = report(&g);
        for (a, b) in [(Condition::K1, Condition::K2), (Condition::L1, Condition::L2), (Condition::L3, Condition::L4)] {
            prop_assert!(!(rep.holds(a) && rep.holds(b)));
        }
        prop_assert!(!rep.holds(Condition::CInfinity));
    }

    #[test]
    fn l1_intervals_are_disjoint_intervals(g in tournament(10)) {
        let rep = report(&g);
        for (i, a) in rep.l1_intervals.iter().enumerate() {
            prop_assert!(is_interval(&g, *a).unwrap());
            for b in &rep.l1_intervals[i + 1..] {
                prop_assert!(a.is_disjoint(*b));
            }
        }
        prop_assert!(is_tournament(&g));
    }
}
