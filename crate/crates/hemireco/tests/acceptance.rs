//! One pass/fail line per acceptance criterion. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use hemireco::campaign::{run_campaign, strip_timing, CampaignConfig, ClassFilter, Line, Source, VerdictRecord};
use hemireco::{campaign, dg, fixtures};
use hemireco_core::decide::{decide, report};
use hemireco_core::enumerate::{
    burnside_digraph_count, burnside_tournament_count, enumerate_digraphs, enumerate_tournaments,
};
use hemireco_core::hypo::{are_leq_k_hypomorphic, difference_classes, Relation};
use hemireco_core::iso::{is_self_dual, KeyCache};
use hemireco_core::structure::{
    arc_connected_components, c_dual, is_chain, is_consecutivity, is_cycle,
    is_diamond_free_tournament, is_interval, is_near_chain, is_prechain, is_proper_prechain,
};
use hemireco_core::witness::{
    all_flip_mates, construct_witness_l, oracle_find_hypomorphic_mate_cached,
    oracle_find_witness_with_budget, verify_witness, WitnessMethod,
};
use hemireco_core::{CDual, Digraph, VertexSet};

/// Budget for oracle runs on the K1 instance, whose flip space has 2^31 points.
const LARGE_BUDGET: u64 = 1 << 31;

struct Outcome {
    pass: bool,
    detail: String,
}

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let pass = out.pass && took <= limit;
        if !pass {
            self.failures += 1;
        }
        println!(
            "{} criterion {id}: {} [{:.1}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
}

fn records(cfg: &CampaignConfig) -> (Vec<VerdictRecord>, String) {
    let mut buf = Vec::new();
    run_campaign(cfg, &mut buf).expect("campaign runs");
    let text = String::from_utf8(buf).expect("utf-8");
    let recs = campaign::read_lines(text.as_bytes())
        .expect("readable")
        .into_iter()
        .filter_map(|l| match l {
            Line::Record(r) => Some(r),
            _ => None,
        })
        .collect();
    (recs, text)
}

fn flipped(g: &Digraph, pairs: &[(usize, usize)]) -> Digraph {
    pairs
        .iter()
        .fold(g.clone(), |h, &(i, j)| h.reverse_within(VertexSet::from_iter([i, j])))
}

/// Pairs of the campaign records with their recorded witnesses.
fn witness_pairs(recs: &[VerdictRecord]) -> Vec<(Digraph, Digraph)> {
    let mut out = Vec::new();
    for r in recs {
        let g = dg::parse(&r.dg).expect("records hold valid digraphs");
        for v in &r.verdicts {
            if !v.flipped.is_empty() {
                out.push((g.clone(), flipped(&g, &v.flipped)));
            }
        }
    }
    out
}

struct Tally {
    disagreements: usize,
    unresolved: usize,
    replay_failures: usize,
    non_hr: usize,
}

fn tally(recs: &[VerdictRecord]) -> Tally {
    let mut t = Tally {
        disagreements: 0,
        unresolved: 0,
        replay_failures: 0,
        non_hr: 0,
    };
    for r in recs {
        for v in &r.verdicts {
            match v.agree {
                Some(false) => t.disagreements += 1,
                None => t.unresolved += 1,
                Some(true) => {}
            }
            if !v.half_reconstructible {
                t.non_hr += 1;
            }
        }
        if r.error.is_some() || !campaign::replay(r).is_empty() {
            t.replay_failures += 1;
        }
    }
    t
}

fn criterion_1() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, want) in [(3, 16u128), (4, 218), (5, 9608)] {
        let got = enumerate_digraphs(n).unwrap().len() as u128;
        let orbit = burnside_digraph_count(n).unwrap();
        ok &= got == want && orbit == want;
        parts.push(format!("D{n}={got}/{orbit}"));
    }
    for (n, want) in [(4, 4u128), (5, 12), (6, 56), (7, 456), (8, 6880)] {
        let got = enumerate_tournaments(n).unwrap().len() as u128;
        let orbit = burnside_tournament_count(n).unwrap();
        ok &= got == want && orbit == want;
        parts.push(format!("T{n}={got}/{orbit}"));
    }
    Outcome {
        pass: ok,
        detail: format!("census key/orbit {}", parts.join(" ")),
    }
}

fn exhaustive(n_max: usize, class: ClassFilter, ks: Vec<usize>) -> CampaignConfig {
    CampaignConfig {
        n_min: 1,
        n_max,
        class,
        source: Source::Exhaustive,
        ks,
        ..CampaignConfig::default()
    }
}

fn criterion_2(pairs: &mut Vec<(Digraph, Digraph)>) -> Outcome {
    let (recs, _) = records(&exhaustive(5, ClassFilter::All, vec![6]));
    let t = tally(&recs);
    pairs.extend(witness_pairs(&recs));
    Outcome {
        pass: recs.len() == 1 + 3 + 16 + 218 + 9608
            && t.disagreements == 0
            && t.unresolved == 0
            && t.replay_failures == 0,
        detail: format!(
            "{} classes n<=5, decide(k=6) vs oracle: {} disagreements, {} unresolved, {} non-HR, {} replay failures",
            recs.len(),
            t.disagreements,
            t.unresolved,
            t.non_hr,
            t.replay_failures
        ),
    }
}

fn criterion_3(pairs: &mut Vec<(Digraph, Digraph)>) -> Outcome {
    let (recs, _) = records(&exhaustive(7, ClassFilter::Tournaments, vec![6, 7]));
    let t = tally(&recs);
    pairs.extend(witness_pairs(&recs));
    let n7_mates_at_7 = recs
        .iter()
        .filter(|r| r.n == 7)
        .filter(|r| r.verdicts.iter().any(|v| v.k == 7 && v.oracle != "none"))
        .count();
    let n7 = recs.iter().filter(|r| r.n == 7).count();
    Outcome {
        pass: t.disagreements == 0
            && t.unresolved == 0
            && t.replay_failures == 0
            && n7 == 456
            && n7_mates_at_7 == 0,
        detail: format!(
            "{} tournament classes n<=7 at k=6,7: {} disagreements, {} unresolved, {} non-HR verdicts; n=7 classes with a (<=7)-witness: {}/{}",
            recs.len(),
            t.disagreements,
            t.unresolved,
            t.non_hr,
            n7_mates_at_7,
            n7
        ),
    }
}

fn criterion_4(pairs: &mut Vec<(Digraph, Digraph)>) -> Outcome {
    let (t, p, instances) = fixtures::discover_all().unwrap();
    let mut ok = t.found.is_some() && p.found.is_some() && instances.len() == 5;
    let mut parts = vec![format!(
        "T at n={:?}, P at n={:?}",
        t.found.as_ref().map(Digraph::n),
        p.found.as_ref().map(Digraph::n)
    )];
    for inst in &instances {
        let rep = report(&inst.g);
        let mut line = format!("{}({})", inst.name, inst.condition.name());
        ok &= rep.holds(inst.condition);
        for &k in &inst.non_hr_ks {
            let v = decide(&inst.g, k).unwrap();
            ok &= !v.half_reconstructible;
            let w = if k == 6 && rep.any_l() {
                construct_witness_l(&inst.g, &rep, LARGE_BUDGET).unwrap()
            } else {
                oracle_find_witness_with_budget(&inst.g, k, LARGE_BUDGET).unwrap()
            };
            let certified = match &w.witness {
                Some(h) => {
                    let cert = verify_witness(&inst.g, h, k).unwrap();
                    pairs.push((inst.g.clone(), h.clone()));
                    cert.is_witness() && w.certificate.as_ref() == Some(&cert)
                }
                None => false,
            };
            ok &= certified;
            line.push_str(&format!(
                " k={k}:{}{}",
                if certified { "certified" } else { "UNCERTIFIED" },
                if w.method == WitnessMethod::LConstruction { "/L" } else { "/oracle" }
            ));
        }
        let first_hr = (6..=12).find(|&k| decide(&inst.g, k).unwrap().half_reconstructible);
        if let Some(k) = first_hr {
            let m = inst.g.directed_pairs().len();
            if m <= 31 {
                let w = oracle_find_witness_with_budget(&inst.g, k, LARGE_BUDGET).unwrap();
                ok &= w.witness.is_none();
                line.push_str(&format!(
                    " k={k}:HR/{}",
                    if w.witness.is_none() { "no-witness" } else { "WITNESS" }
                ));
            }
        }
        parts.push(line);
    }
    Outcome {
        pass: ok,
        detail: parts.join("; "),
    }
}

fn in_taxonomy(h: &Digraph) -> bool {
    (is_prechain(h) && is_self_dual(h))
        || is_consecutivity(h)
        || is_cycle(h)
        || is_chain(h)
        || is_near_chain(h)
}

fn criterion_5(witnesses: &[(Digraph, Digraph)]) -> Outcome {
    let mut hemi_pairs: Vec<(Digraph, Digraph)> = witnesses.to_vec();
    let mut hypo3_pairs = Vec::new();
    let mut hypo6_pairs = Vec::new();
    let mut sources: Vec<Digraph> = (1..=5).flat_map(|n| enumerate_digraphs(n).unwrap()).collect();
    sources.extend(enumerate_tournaments(6).unwrap());
    sources.extend(enumerate_tournaments(7).unwrap());
    for g in &sources {
        for h in all_flip_mates(g, 3, Relation::Isomorphic, 1 << 22).unwrap() {
            hypo3_pairs.push((g.clone(), h));
        }
        for h in all_flip_mates(g, 6, Relation::Isomorphic, 1 << 22).unwrap() {
            hypo6_pairs.push((g.clone(), h));
        }
        if g.n() <= 5 {
            for h in all_flip_mates(g, 6, Relation::Hemimorphic, 1 << 22).unwrap() {
                hemi_pairs.push((g.clone(), h));
            }
        }
    }
    for (g, h) in witnesses {
        if are_leq_k_hypomorphic(g, h, 3).unwrap() {
            hypo3_pairs.push((g.clone(), h.clone()));
        }
    }

    let classes_of = |g: &Digraph, h: &Digraph| -> Vec<VertexSet> {
        difference_classes(g, h).unwrap().iter().filter(|c| c.len() >= 2).collect()
    };

    let mut v_a = 0;
    for (g, h) in &hypo3_pairs {
        for c in classes_of(g, h) {
            let connected = arc_connected_components(&g.induced(c).unwrap()).len() == 1;
            if !(is_interval(g, c).unwrap() && is_interval(h, c).unwrap() && connected) {
                v_a += 1;
            }
        }
    }
    let mut v_b = 0;
    for (g, h) in &hypo6_pairs {
        for c in classes_of(g, h) {
            if !in_taxonomy(&g.induced(c).unwrap()) {
                v_b += 1;
            }
        }
    }
    let mut v_c = 0;
    let mut c_checks = 0;
    for (g, h) in &hemi_pairs {
        for c in classes_of(g, h) {
            let (gc, hc) = (g.induced(c).unwrap(), h.induced(c).unwrap());
            let cd = c_dual(&gc);
            for k in 1..=6 {
                c_checks += 1;
                if are_leq_k_hypomorphic(&gc, &hc, k).unwrap() != cd.at_least(k + 1) {
                    v_c += 1;
                }
            }
        }
    }
    let mut v_d = 0;
    for i in 0..1000u64 {
        let n = 1 + (i % 10) as usize;
        let g = hemireco::random::random_digraph(n, 0x5eed + i, hemireco::random::PairWeights::UNIFORM).unwrap();
        if difference_classes(&g, &g.dual()).unwrap() != arc_connected_components(&g) {
            v_d += 1;
        }
    }
    // Non-self-dual arc-connected digraphs with c_dual 5 are proper prechains, with
    // c_dual 6 diamond-free tournaments, and c_dual 7 or more does not occur.
    let mut v_e = 0;
    let mut e_seen = [0usize; 2];
    let mut e_sources = sources.clone();
    e_sources.extend(enumerate_tournaments(8).unwrap());
    for g in &e_sources {
        if is_self_dual(g) || arc_connected_components(g).len() != 1 {
            continue;
        }
        match c_dual(g) {
            CDual::Finite(5) => {
                e_seen[0] += 1;
                v_e += usize::from(!is_proper_prechain(g));
            }
            CDual::Finite(6) => {
                e_seen[1] += 1;
                v_e += usize::from(!is_diamond_free_tournament(g));
            }
            CDual::Finite(_) => {}
            CDual::Infinity => v_e += 1,
        }
    }
    Outcome {
        pass: v_a + v_b + v_c + v_d + v_e == 0,
        detail: format!(
            "(a) {} (<=3)-hypomorphic pairs: {v_a} violations; (b) {} (<=6)-hypomorphic pairs: {v_b}; (c) {} (<=6)-hemimorphic pairs, {c_checks} checks: {v_c}; (d) 1000 random n<=10: {v_d}; (e) c_dual 5/6 components ({}/{}): {v_e}",
            hypo3_pairs.len(),
            hypo6_pairs.len(),
            hemi_pairs.len(),
            e_seen[0],
            e_seen[1]
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut cache = KeyCache::new();
    let mut found = 0;
    let mut checked = 0;
    let mut sources: Vec<Digraph> = (1..=6).flat_map(|n| enumerate_digraphs(n).unwrap()).collect();
    sources.extend(enumerate_tournaments(7).unwrap());
    for g in &sources {
        checked += 1;
        if oracle_find_hypomorphic_mate_cached(g, 6, 1 << 22, &mut cache)
            .unwrap()
            .is_some()
        {
            found += 1;
        }
    }
    Outcome {
        pass: found == 0 && checked == 1 + 3 + 16 + 218 + 9608 + 1_540_944 + 456,
        detail: format!("{checked} classes (all n<=6, tournaments n=7): {found} non-isomorphic (<=6)-hypomorphic mates"),
    }
}

fn criterion_7() -> Outcome {
    let configs = [
        exhaustive(4, ClassFilter::All, vec![6, 7]),
        CampaignConfig {
            n_min: 4,
            n_max: 8,
            source: Source::Sampled,
            samples: 200,
            seed: 2024,
            ..CampaignConfig::default()
        },
        CampaignConfig {
            source: Source::Constructed,
            ks: vec![6],
            budget: LARGE_BUDGET,
            ..CampaignConfig::default()
        },
    ];
    let mut same = 0;
    for cfg in &configs {
        let (_, a) = records(cfg);
        let (_, b) = records(cfg);
        let strip = |t: &str| t.lines().map(strip_timing).collect::<Vec<_>>().join("\n");
        if strip(&a) == strip(&b) {
            same += 1;
        }
    }
    Outcome {
        pass: same == configs.len(),
        detail: format!("{same}/{} campaigns byte-identical across reruns (timing stripped)", configs.len()),
    }
}

fn main() {
    let mut r = Report { failures: 0 };
    let mut witnesses = Vec::new();
    let min = |m: u64| Duration::from_secs(60 * m);
    r.line("1", min(2), criterion_1);
    r.line("2", min(15), || criterion_2(&mut witnesses));
    r.line("3", min(30), || criterion_3(&mut witnesses));
    r.line("4", min(10), || criterion_4(&mut witnesses));
    r.line("5", min(30), || criterion_5(&witnesses));
    r.line("6", min(30), criterion_6);
    r.line("7", min(10), criterion_7);
    println!("{} of 7 criteria failed", r.failures);
    if r.failures > 0 {
        std::process::exit(1);
    }
}
