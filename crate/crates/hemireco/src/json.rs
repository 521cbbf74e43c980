//! JSON views of core results. Keys are hex strings, vertex sets sorted lists,
//! partitions sorted lists of sorted lists, and embedded digraphs `.dg` text.

use serde_json::{json, Value};

use hemireco_core::decide::{KKind, L3Kind};
use hemireco_core::structure::{FlagTriple, NeutralIncidence};
use hemireco_core::witness::{Certificate, WitnessResult};
use hemireco_core::{CDual, Condition, ConditionReport, Partition, Verdict, VertexSet};

use crate::dg;

pub fn set(x: VertexSet) -> Value {
    json!(x.to_vec())
}

pub fn sets(xs: &[VertexSet]) -> Value {
    Value::Array(xs.iter().map(|&x| set(x)).collect())
}

pub fn partition(p: &Partition) -> Value {
    let mut lists = p.to_lists();
    lists.sort();
    json!(lists)
}

/// An integer, or the string `"infinity"`.
pub fn cdual(c: CDual) -> Value {
    match c {
        CDual::Finite(k) => json!(k),
        CDual::Infinity => json!("infinity"),
    }
}

pub fn cdual_text(c: CDual) -> String {
    match c {
        CDual::Finite(k) => k.to_string(),
        CDual::Infinity => "infinity".into(),
    }
}

pub fn flag(f: &FlagTriple) -> Value {
    json!({"apex": f.apex, "from": f.from, "to": f.to})
}

pub fn incidence(rows: &[NeutralIncidence]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({"vertex": r.vertex, "full": set(r.full), "void": set(r.void)}))
            .collect(),
    )
}

pub fn conditions(rep: &ConditionReport) -> Value {
    let mut m = serde_json::Map::new();
    for c in Condition::ALL {
        m.insert(c.name().into(), json!(rep.holds(c)));
    }
    Value::Object(m)
}

pub fn evidence(rep: &ConditionReport) -> Value {
    let mut m = serde_json::Map::new();
    for c in rep.triggered() {
        let mut e = json!({"sets": sets(&rep.evidence(c))});
        let flags = rep.evidence_flags(c);
        if !flags.is_empty() {
            e["flags"] = Value::Array(flags.iter().map(flag).collect());
        }
        m.insert(c.name().into(), e);
    }
    Value::Object(m)
}

pub fn report(rep: &ConditionReport) -> Value {
    let k_components: Vec<Value> = rep
        .k_components
        .iter()
        .map(|k| {
            let kind = match k.kind {
                KKind::DiamondFreeTournament => "diamond_free_tournament",
                KKind::PrechainNoFlag => "prechain_without_flag",
            };
            json!({"set": set(k.set), "kind": kind})
        })
        .collect();
    let l3: Vec<Value> = rep
        .l3_components
        .iter()
        .map(|l| match l.kind {
            L3Kind::FlagDisjoint => json!({"set": set(l.set), "kind": "flag_disjoint"}),
            L3Kind::FlagApex(f) => json!({"set": set(l.set), "kind": "flag_apex", "flag": flag(&f)}),
        })
        .collect();
    json!({
        "n": rep.n,
        "c_dual": cdual(rep.c_dual),
        "c_dual_witness": rep.c_dual_witness.map(set),
        "components": partition(&rep.components),
        "flags": rep.flags.iter().map(flag).collect::<Vec<_>>(),
        "nsd_interval_components": rep
            .nsd_interval_components
            .iter()
            .map(|&(s, c)| json!({"set": set(s), "c_dual": cdual(c)}))
            .collect::<Vec<_>>(),
        "k_components": k_components,
        "prechain_components": sets(&rep.prechain_components),
        "dft_components": sets(&rep.dft_components),
        "l1_intervals": sets(&rep.l1_intervals),
        "l3_components": l3,
        "l3_mixed_only": rep.l3_mixed_only(),
        "conditions": conditions(rep),
        "evidence": evidence(rep),
    })
}

pub fn condition_names(cs: &[Condition]) -> Vec<&'static str> {
    cs.iter().map(|c| c.name()).collect()
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "k": v.k,
        "half_reconstructible": v.half_reconstructible,
        "triggering": condition_names(&v.triggering),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "n": c.n,
        "k": c.k,
        "sizes": c.tallies.iter().map(|t| json!({
            "size": t.size,
            "checked": t.checked,
            "passed": t.passed,
            "first_failure": t.first_failure.map(set),
        })).collect::<Vec<_>>(),
        "key": c.key.to_hex(),
        "other_key": c.other_key.to_hex(),
        "other_dual_key": c.other_dual_key.to_hex(),
        "leq_k_hemimorphic": c.leq_k_hemimorphic(),
        "hemimorphic": c.hemimorphic(),
        "is_witness": c.is_witness(),
    })
}

pub fn witness(w: &WitnessResult) -> Value {
    json!({
        "method": w.method.name(),
        "witness": w.witness.as_ref().map(dg::to_string),
        "flipped": w.flipped,
        "certificate": w.certificate.as_ref().map(certificate),
        "note": w.note,
    })
}
