//! Smallest-instance discovery and the instances built from its results.

use std::path::Path;

use hemireco_core::enumerate::{enumerate_digraphs, enumerate_tournaments};
use hemireco_core::gallery::{disjoint_union, flag, series, substitute, void};
use hemireco_core::iso::is_self_dual;
use hemireco_core::structure::{is_diamond_free_tournament, is_prechain, is_tournament};
use hemireco_core::{Condition, Digraph, Result};

use crate::dg;

/// Outcome of a smallest-instance search: per order scanned, the class count and the
/// number of matching classes. `found` is the first match in key order at the
/// smallest order with any; `None` proves absence up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discovery {
    pub what: &'static str,
    pub bound: usize,
    pub scanned: Vec<(usize, usize, usize)>,
    pub found: Option<Digraph>,
}

fn discover(
    what: &'static str,
    bound: usize,
    classes: impl Fn(usize) -> Result<Vec<Digraph>>,
    keep: impl Fn(&Digraph) -> bool,
) -> Result<Discovery> {
    let mut scanned = Vec::new();
    for n in 1..=bound {
        let reps = classes(n)?;
        let hits: Vec<Digraph> = reps.iter().filter(|g| keep(g)).cloned().collect();
        scanned.push((n, reps.len(), hits.len()));
        if let Some(first) = hits.into_iter().next() {
            return Ok(Discovery {
                what,
                bound,
                scanned,
                found: Some(first),
            });
        }
    }
    Ok(Discovery {
        what,
        bound,
        scanned,
        found: None,
    })
}

/// Smallest non-self-dual diamond-free tournament, searching orders up to `bound <= 8`.
pub fn smallest_dft(bound: usize) -> Result<Discovery> {
    discover(
        "non-self-dual diamond-free tournament",
        bound,
        enumerate_tournaments,
        |g| is_diamond_free_tournament(g) && !is_self_dual(g),
    )
}

/// Smallest non-self-dual prechain that is not a tournament, orders up to `bound <= 6`.
pub fn smallest_prechain(bound: usize) -> Result<Discovery> {
    discover(
        "non-self-dual non-tournament prechain",
        bound,
        enumerate_digraphs,
        |g| !is_tournament(g) && is_prechain(g) && !is_self_dual(g),
    )
}

/// A digraph built to trigger one condition, with the orders at which it should be
/// declared not half-reconstructible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: &'static str,
    pub g: Digraph,
    pub condition: Condition,
    pub non_hr_ks: Vec<usize>,
}

/// `substitute(flag, [point, point, p])`: `p` sits at the apex of a flag.
pub fn flag_with_prechain(p: &Digraph) -> Digraph {
    substitute(&flag(), &[void(1), void(1), p.clone()])
}

pub fn constructed(t: &Digraph, p: &Digraph) -> Vec<Instance> {
    let fp = flag_with_prechain(p);
    vec![
        Instance {
            name: "series_t_t",
            g: series(t, t),
            condition: Condition::L1,
            non_hr_ks: vec![6],
        },
        Instance {
            name: "series_t_tdual",
            g: series(t, &t.dual()),
            condition: Condition::L1,
            non_hr_ks: vec![6],
        },
        Instance {
            name: "k1_t_tdual_flag",
            g: disjoint_union(&[t.clone(), t.dual(), flag()]),
            condition: Condition::K1,
            non_hr_ks: vec![6, 7, 8],
        },
        Instance {
            name: "l4_flag_p",
            g: fp.clone(),
            condition: Condition::L4,
            non_hr_ks: vec![6],
        },
        Instance {
            name: "l3_two_flag_p",
            g: disjoint_union(&[fp.clone(), fp]),
            condition: Condition::L3,
            non_hr_ks: vec![6],
        },
    ]
}

/// Runs both searches at their full bounds and builds the instances.
pub fn discover_all() -> Result<(Discovery, Discovery, Vec<Instance>)> {
    let t = smallest_dft(8)?;
    let p = smallest_prechain(6)?;
    let instances = match (&t.found, &p.found) {
        (Some(tg), Some(pg)) => constructed(tg, pg),
        _ => Vec::new(),
    };
    Ok((t, p, instances))
}

/// Every fixture as `(file name, .dg text)`.
pub fn fixture_files(t: &Digraph, p: &Digraph) -> Vec<(String, String)> {
    let mut out = vec![
        ("smallest_dft.dg".to_string(), dg::to_string(t)),
        ("smallest_prechain.dg".to_string(), dg::to_string(p)),
    ];
    for inst in constructed(t, p) {
        out.push((format!("{}.dg", inst.name), dg::to_string(&inst.g)));
    }
    out
}

pub fn write_fixtures(dir: &Path, t: &Digraph, p: &Digraph) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, text) in fixture_files(t, p) {
        std::fs::write(dir.join(name), text)?;
    }
    Ok(())
}
