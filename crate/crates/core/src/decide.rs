//! Conditions K1 to K5 and L1 to L4, and the half-reconstructibility verdicts.

use alloc::vec::Vec;

use crate::digraph::Digraph;
use crate::error::{usage, Result};
use crate::iso::{is_self_dual, iso_with_fixed_point, KeyCache};
use crate::partition::Partition;
use crate::structure::{
    arc_connected_components, c_dual_cached, contract, flag_triples, intervals_where,
    is_diamond_free_tournament, is_interval, is_prechain, is_tournament, CDual, FlagTriple,
};
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    CInfinity,
    K1,
    K2,
    K3,
    K4,
    K5,
    L1,
    L2,
    L3,
    L4,
}

impl Condition {
    pub const ALL: [Condition; 10] = [
        Condition::CInfinity,
        Condition::K1,
        Condition::K2,
        Condition::K3,
        Condition::K4,
        Condition::K5,
        Condition::L1,
        Condition::L2,
        Condition::L3,
        Condition::L4,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Condition::CInfinity => "C_inf",
            Condition::K1 => "K1",
            Condition::K2 => "K2",
            Condition::K3 => "K3",
            Condition::K4 => "K4",
            Condition::K5 => "K5",
            Condition::L1 => "L1",
            Condition::L2 => "L2",
            Condition::L3 => "L3",
            Condition::L4 => "L4",
        }
    }

    pub const fn is_k(self) -> bool {
        matches!(
            self,
            Condition::K1 | Condition::K2 | Condition::K3 | Condition::K4 | Condition::K5
        )
    }

    pub const fn is_l(self) -> bool {
        matches!(
            self,
            Condition::L1 | Condition::L2 | Condition::L3 | Condition::L4
        )
    }
}

/// Why a component counts towards K1 and K2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KKind {
    DiamondFreeTournament,
    PrechainNoFlag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KComponent {
    pub set: VertexSet,
    pub kind: KKind,
}

/// Why a component counts towards L3 and L4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum L3Kind {
    /// Disjoint from every flag, with a sub-`c_dual` of 4.
    FlagDisjoint,
    /// A non-tournament prechain holding the apex of a flag whose directed pair lies
    /// outside.
    FlagApex(FlagTriple),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct L3Component {
    pub set: VertexSet,
    pub kind: L3Kind,
}

/// Everything the conditions are computed from, kept as evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub n: usize,
    pub c_dual: CDual,
    pub c_dual_witness: Option<VertexSet>,
    pub components: Partition,
    pub flags: Vec<FlagTriple>,
    /// Non-self-dual components that are intervals, with their own `c_dual`.
    pub nsd_interval_components: Vec<(VertexSet, CDual)>,
    pub k_components: Vec<KComponent>,
    pub prechain_components: Vec<VertexSet>,
    pub dft_components: Vec<VertexSet>,
    pub l1_intervals: Vec<VertexSet>,
    pub l3_components: Vec<L3Component>,
    holds: [bool; 10],
}

impl ConditionReport {
    pub fn holds(&self, c: Condition) -> bool {
        self.holds[c as usize]
    }

    pub fn triggered(&self) -> Vec<Condition> {
        Condition::ALL.into_iter().filter(|&c| self.holds(c)).collect()
    }

    pub fn any_k(&self) -> bool {
        Condition::ALL.iter().any(|c| c.is_k() && self.holds(*c))
    }

    pub fn any_l(&self) -> bool {
        Condition::ALL.iter().any(|c| c.is_l() && self.holds(*c))
    }

    /// L3 holds only because components of both kinds were counted together.
    pub fn l3_mixed_only(&self) -> bool {
        if !self.holds(Condition::L3) {
            return false;
        }
        let a = self
            .l3_components
            .iter()
            .filter(|c| c.kind == L3Kind::FlagDisjoint)
            .count();
        let b = self.l3_components.len() - a;
        a < 2 && b < 2
    }

    /// The vertex sets a true condition rests on; empty for false conditions.
    pub fn evidence(&self, c: Condition) -> Vec<VertexSet> {
        if !self.holds(c) {
            return Vec::new();
        }
        match c {
            Condition::CInfinity => Vec::new(),
            Condition::K1 | Condition::K2 => self.k_components.iter().map(|k| k.set).collect(),
            Condition::K3 => self.nsd_interval_components.iter().map(|p| p.0).collect(),
            Condition::K4 => self.prechain_components.clone(),
            Condition::K5 => self.dft_components.clone(),
            Condition::L1 | Condition::L2 => self.l1_intervals.clone(),
            Condition::L3 | Condition::L4 => self.l3_components.iter().map(|l| l.set).collect(),
        }
    }

    /// Flags named by a true condition's evidence.
    pub fn evidence_flags(&self, c: Condition) -> Vec<FlagTriple> {
        match c {
            Condition::L3 | Condition::L4 if self.holds(c) => self
                .l3_components
                .iter()
                .filter_map(|l| match l.kind {
                    L3Kind::FlagApex(f) => Some(f),
                    L3Kind::FlagDisjoint => None,
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Always false: every branch of the condition needs an infinite interval.
pub fn cond_c_infinity(_g: &Digraph) -> bool {
    false
}

fn induces_tournament(rel_directed: &[u64], s: VertexSet) -> bool {
    s.iter()
        .all(|v| s.without(v).mask() & !rel_directed[v] == 0)
}

/// No isomorphism from `G_D` onto `G*_D` fixes the contracted vertex.
fn no_fixed_contraction_iso(g: &Digraph, d: VertexSet) -> bool {
    if d == g.vertices() {
        return false;
    }
    let (a, v) = contract(g, d).expect("qualifying sets are proper intervals");
    let (b, w) = contract(&g.dual(), d).expect("intervals survive duality");
    !iso_with_fixed_point(&a, &b, v, w).expect("same order")
}

fn meets_no_flag(d: VertexSet, flags: &[FlagTriple]) -> bool {
    flags.iter().all(|f| f.vertices().is_disjoint(d))
}

/// Non-self-dual diamond-free tournament intervals that are not components.
pub fn qualifying_l1_intervals(g: &Digraph) -> Vec<VertexSet> {
    l1_intervals_given(g, &arc_connected_components(g))
}

fn l1_intervals_given(g: &Digraph, components: &Partition) -> Vec<VertexSet> {
    let directed: Vec<u64> = {
        let rel = g.relations();
        (0..g.n()).map(|v| rel.directed(v)).collect()
    };
    intervals_where(
        g,
        3,
        |s| induces_tournament(&directed, s),
        |s| {
            !components.contains_class(s) && {
                let h = g.induced_unchecked(s);
                !is_self_dual(&h) && is_diamond_free_tournament(&h)
            }
        },
    )
}

/// Components counting towards K1 and K2.
pub fn qualifying_k_components(g: &Digraph) -> Vec<KComponent> {
    report(g).k_components
}

/// Evaluates every condition.
pub fn report(g: &Digraph) -> ConditionReport {
    report_cached(g, &mut KeyCache::new())
}

/// [`report`] reusing a caller's key memo.
pub fn report_cached(g: &Digraph, cache: &mut KeyCache) -> ConditionReport {
    let (cd, cd_witness) = c_dual_cached(g, cache);
    let components = arc_connected_components(g);
    let flags = flag_triples(g);

    let mut nsd = Vec::new();
    let mut k_components = Vec::new();
    let mut prechain_components = Vec::new();
    let mut dft_components = Vec::new();
    let mut l3_components = Vec::new();
    for d in components.iter() {
        if d.len() < 3 || !is_interval(g, d).expect("component in range") {
            continue;
        }
        let h = g.induced_unchecked(d);
        if is_self_dual(&h) {
            continue;
        }
        let sub = c_dual_cached(&h, cache).0;
        nsd.push((d, sub));
        let tournament = is_tournament(&h);
        let prechain = is_prechain(&h);
        let dft = tournament && prechain;
        let flag_free = meets_no_flag(d, &flags);
        if prechain {
            prechain_components.push(d);
        }
        if dft {
            dft_components.push(d);
            k_components.push(KComponent {
                set: d,
                kind: KKind::DiamondFreeTournament,
            });
        } else if prechain && flag_free {
            k_components.push(KComponent {
                set: d,
                kind: KKind::PrechainNoFlag,
            });
        }
        if flag_free && sub == CDual::Finite(4) {
            l3_components.push(L3Component {
                set: d,
                kind: L3Kind::FlagDisjoint,
            });
        } else if prechain && !tournament {
            let apex_flag = flags
                .iter()
                .find(|f| d.contains(f.apex) && !d.contains(f.from) && !d.contains(f.to));
            if let Some(&f) = apex_flag {
                l3_components.push(L3Component {
                    set: d,
                    kind: L3Kind::FlagApex(f),
                });
            }
        }
    }
    let l1_intervals = l1_intervals_given(g, &components);

    let c3 = cd == CDual::Finite(3);
    let mut holds = [false; 10];
    holds[Condition::CInfinity as usize] = cond_c_infinity(g);
    holds[Condition::K1 as usize] = c3 && k_components.len() >= 2;
    holds[Condition::K2 as usize] =
        c3 && k_components.len() == 1 && no_fixed_contraction_iso(g, k_components[0].set);
    holds[Condition::K3 as usize] = cd == CDual::Finite(4) && nsd.len() >= 2;
    holds[Condition::K4 as usize] = cd == CDual::Finite(5) && prechain_components.len() >= 2;
    holds[Condition::K5 as usize] = cd == CDual::Finite(6) && dft_components.len() >= 2;
    holds[Condition::L1 as usize] = l1_intervals.len() >= 2;
    holds[Condition::L2 as usize] =
        l1_intervals.len() == 1 && no_fixed_contraction_iso(g, l1_intervals[0]);
    holds[Condition::L3 as usize] = c3 && l3_components.len() >= 2;
    holds[Condition::L4 as usize] =
        c3 && l3_components.len() == 1 && no_fixed_contraction_iso(g, l3_components[0].set);

    ConditionReport {
        n: g.n(),
        c_dual: cd,
        c_dual_witness: cd_witness,
        components,
        flags,
        nsd_interval_components: nsd,
        k_components,
        prechain_components,
        dft_components,
        l1_intervals,
        l3_components,
        holds,
    }
}

/// Condition `Ki`, `i` in `1..=5`.
pub fn cond_k(g: &Digraph, i: usize) -> Result<bool> {
    let c = match i {
        1 => Condition::K1,
        2 => Condition::K2,
        3 => Condition::K3,
        4 => Condition::K4,
        5 => Condition::K5,
        _ => return Err(usage("K conditions are numbered 1 to 5")),
    };
    Ok(report(g).holds(c))
}

/// Condition `Li`, `i` in `1..=4`.
pub fn cond_l(g: &Digraph, i: usize) -> Result<bool> {
    let c = match i {
        1 => Condition::L1,
        2 => Condition::L2,
        3 => Condition::L3,
        4 => Condition::L4,
        _ => return Err(usage("L conditions are numbered 1 to 4")),
    };
    Ok(report(g).holds(c))
}

pub const MIN_K: usize = 6;
pub const MAX_K: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub k: usize,
    pub half_reconstructible: bool,
    pub triggering: Vec<Condition>,
}

/// Verdict for `(<= k)`-half-reconstructibility from a report.
///
/// - `k = 6`: not half-reconstructible iff some K or L condition holds.
/// - `k = 7`: iff some K condition holds.
/// - `8 <= k <= 11`: iff some K condition holds and `k < c_dual + 6`; a digraph with a
///   non-self-dual subdigraph on `c` vertices is `(<= c + 6)`-half-reconstructible.
/// - `k = 12`: always half-reconstructible.
pub fn verdict_from(rep: &ConditionReport, k: usize) -> Result<Verdict> {
    if !(MIN_K..=MAX_K).contains(&k) {
        return Err(usage(alloc::format!("k must lie in 6..=12, got {k}")));
    }
    let ks: Vec<Condition> = rep.triggered().into_iter().filter(|c| c.is_k()).collect();
    let triggering = match k {
        6 => rep
            .triggered()
            .into_iter()
            .filter(|c| c.is_k() || c.is_l())
            .collect(),
        7 => ks,
        12 => Vec::new(),
        _ => match rep.c_dual.finite() {
            Some(c) if k < c + 6 => ks,
            _ => Vec::new(),
        },
    };
    Ok(Verdict {
        k,
        half_reconstructible: triggering.is_empty(),
        triggering,
    })
}

pub fn decide(g: &Digraph, k: usize) -> Result<Verdict> {
    if !(MIN_K..=MAX_K).contains(&k) {
        return Err(usage(alloc::format!("k must lie in 6..=12, got {k}")));
    }
    verdict_from(&report(g), k)
}
