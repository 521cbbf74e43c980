//! Verification campaigns: decide against the flip oracle over enumerated, sampled or
//! constructed digraphs, written as JSONL with one record per line.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hemireco_core::decide::{report_cached, verdict_from, MAX_K, MIN_K};
use hemireco_core::enumerate::{
    burnside_digraph_count, burnside_tournament_count, enumerate_digraphs, enumerate_tournaments,
};
use hemireco_core::iso::{canonical_key, is_isomorphic, KeyCache};
use hemireco_core::structure::{
    c_dual, is_diamond_free_tournament, is_flag, is_interval, is_prechain,
};
use hemireco_core::witness::{construct_witness_l, oracle_find_witness_cached, WitnessMethod};
use hemireco_core::{Condition, ConditionReport, Digraph, Error, Result};

use crate::random::{random_digraph, PairWeights};
use crate::{dg, fixtures, json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ClassFilter {
    All,
    Tournaments,
    Prechains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Exhaustive,
    Sampled,
    Constructed,
}

impl Source {
    fn label(self) -> &'static str {
        match self {
            Source::Exhaustive => "exhaustive",
            Source::Sampled => "sampled",
            Source::Constructed => "constructed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub class: ClassFilter,
    pub source: Source,
    pub ks: Vec<usize>,
    pub budget: u64,
    pub seed: u64,
    pub samples: usize,
    /// Run the flip oracle for every k; without it records carry verdicts only.
    pub oracle: bool,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            n_min: 1,
            n_max: 4,
            class: ClassFilter::All,
            source: Source::Exhaustive,
            ks: vec![6],
            budget: hemireco_core::witness::DEFAULT_BUDGET,
            seed: 0,
            samples: 100,
            oracle: true,
            out: None,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min > self.n_max {
            return Err(Error::Usage(format!(
                "empty order range {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.ks.is_empty() {
            return Err(Error::Usage("at least one k is required".into()));
        }
        if let Some(k) = self.ks.iter().find(|k| !(MIN_K..=MAX_K).contains(*k)) {
            return Err(Error::Usage(format!("k must lie in 6..=12, got {k}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub classes: u64,
    /// Orbit count for the same class, where one is available.
    pub orbit_count: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub config: Option<CampaignConfig>,
    pub regime: String,
    pub census: Vec<Census>,
    pub merged_from: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRecord {
    pub k: usize,
    pub half_reconstructible: bool,
    pub triggering: Vec<String>,
    /// `none`, `witness`, `construction`, `capacity`, `skipped` or `error`.
    pub oracle: String,
    pub flipped: Vec<(usize, usize)>,
    /// `Some(verdict == no witness)` whenever the oracle settled the question.
    pub agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub key: String,
    pub n: usize,
    pub dg: String,
    pub regime: String,
    pub label: Option<String>,
    pub c_dual: String,
    pub conditions: BTreeMap<String, bool>,
    pub evidence: BTreeMap<String, Vec<Vec<usize>>>,
    pub l3_mixed_only: bool,
    pub verdicts: Vec<KRecord>,
    pub agreement: bool,
    pub error: Option<String>,
    pub timing_us: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub items: u64,
    pub disagreements: u64,
    pub unresolved: u64,
    pub errors: u64,
    pub not_half_reconstructible: u64,
}

impl Summary {
    fn add(&mut self, r: &VerdictRecord) {
        self.items += 1;
        if !r.agreement {
            self.disagreements += 1;
        }
        if r.error.is_some() {
            self.errors += 1;
        }
        if r.verdicts.iter().any(|v| v.agree.is_none()) {
            self.unresolved += 1;
        }
        if r.verdicts.iter().any(|v| !v.half_reconstructible) {
            self.not_half_reconstructible += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Line {
    Header(Header),
    Record(VerdictRecord),
    Summary(Summary),
}

/// One digraph to evaluate.
#[derive(Clone, Debug)]
pub struct Item {
    pub g: Digraph,
    pub label: Option<String>,
}

fn class_reps(class: ClassFilter, n: usize) -> Result<(Vec<Digraph>, Option<u64>)> {
    Ok(match class {
        ClassFilter::All => (
            enumerate_digraphs(n)?,
            burnside_digraph_count(n).ok().map(|c| c as u64),
        ),
        ClassFilter::Tournaments => (
            enumerate_tournaments(n)?,
            burnside_tournament_count(n).ok().map(|c| c as u64),
        ),
        ClassFilter::Prechains => (
            enumerate_digraphs(n)?.into_iter().filter(is_prechain).collect(),
            None,
        ),
    })
}

const PRECHAIN_ATTEMPTS: u64 = 10_000;

fn sample(cfg: &CampaignConfig, i: usize) -> Result<Option<Digraph>> {
    let span = cfg.n_max - cfg.n_min + 1;
    let n = cfg.n_min + i % span;
    let base = cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64);
    match cfg.class {
        ClassFilter::All => random_digraph(n, base, PairWeights::UNIFORM).map(Some),
        ClassFilter::Tournaments => random_digraph(n, base, PairWeights::TOURNAMENT).map(Some),
        ClassFilter::Prechains => {
            let w = PairWeights {
                forward: 0.4,
                backward: 0.4,
                full: 0.1,
                void: 0.1,
            };
            for a in 0..PRECHAIN_ATTEMPTS {
                let g = random_digraph(n, base ^ (a << 40), w)?;
                if is_prechain(&g) {
                    return Ok(Some(g));
                }
            }
            Ok(None)
        }
    }
}

/// The work items of a campaign and the census lines for its header.
pub fn items(cfg: &CampaignConfig) -> Result<(Vec<Item>, Vec<Census>)> {
    cfg.validate()?;
    let mut items = Vec::new();
    let mut census = Vec::new();
    match cfg.source {
        Source::Exhaustive => {
            for n in cfg.n_min..=cfg.n_max {
                let (reps, orbit_count) = class_reps(cfg.class, n)?;
                census.push(Census {
                    n,
                    classes: reps.len() as u64,
                    orbit_count,
                });
                items.extend(reps.into_iter().map(|g| Item { g, label: None }));
            }
        }
        Source::Sampled => {
            for i in 0..cfg.samples {
                if let Some(g) = sample(cfg, i)? {
                    items.push(Item {
                        g,
                        label: Some(format!("sample {i}")),
                    });
                }
            }
        }
        Source::Constructed => {
            let (_, _, instances) = fixtures::discover_all()?;
            items.extend(instances.into_iter().map(|inst| Item {
                g: inst.g,
                label: Some(inst.name.to_string()),
            }));
        }
    }
    Ok((items, census))
}

fn k_record(
    g: &Digraph,
    rep: &ConditionReport,
    k: usize,
    cfg: &CampaignConfig,
    cache: &mut KeyCache,
) -> Result<KRecord> {
    let v = verdict_from(rep, k)?;
    let hr = v.half_reconstructible;
    let mut rec = KRecord {
        k,
        half_reconstructible: hr,
        triggering: v.triggering.iter().map(|c| c.name().to_string()).collect(),
        oracle: "skipped".into(),
        flipped: Vec::new(),
        agree: None,
    };
    if !cfg.oracle {
        return Ok(rec);
    }
    match oracle_find_witness_cached(g, k, cfg.budget, cache) {
        Ok(w) => {
            let found = w.witness.is_some();
            rec.oracle = if found { "witness" } else { "none" }.into();
            rec.flipped = w.flipped;
            rec.agree = Some(hr != found);
        }
        Err(Error::Capacity { .. }) if k == 6 && rep.any_l() => {
            let w = construct_witness_l(g, rep, 0)?;
            if w.method == WitnessMethod::LConstruction {
                rec.oracle = "construction".into();
                rec.flipped = w.flipped;
                rec.agree = Some(!hr);
            } else {
                rec.oracle = "capacity".into();
            }
        }
        Err(Error::Capacity { .. }) => rec.oracle = "capacity".into(),
        Err(e) => return Err(e),
    }
    Ok(rec)
}

/// Evaluates one item. Errors end up in the record, never in the return value.
pub fn evaluate(item: &Item, cfg: &CampaignConfig, regime: &str, cache: &mut KeyCache) -> VerdictRecord {
    let start = Instant::now();
    let g = &item.g;
    let mut rec = VerdictRecord {
        key: String::new(),
        n: g.n(),
        dg: dg::to_string(g),
        regime: regime.to_string(),
        label: item.label.clone(),
        c_dual: String::new(),
        conditions: BTreeMap::new(),
        evidence: BTreeMap::new(),
        l3_mixed_only: false,
        verdicts: Vec::new(),
        agreement: true,
        error: None,
        timing_us: 0,
    };
    let result = (|| -> Result<()> {
        rec.key = canonical_key(g)?.to_hex();
        let rep = report_cached(g, cache);
        fill_report(&mut rec, &rep);
        for &k in &cfg.ks {
            rec.verdicts.push(k_record(g, &rep, k, cfg, cache)?);
        }
        Ok(())
    })();
    if let Err(e) = result {
        rec.error = Some(e.to_string());
    }
    rec.agreement = rec.verdicts.iter().all(|v| v.agree != Some(false));
    rec.timing_us = start.elapsed().as_micros() as u64;
    rec
}

fn fill_report(rec: &mut VerdictRecord, rep: &ConditionReport) {
    rec.c_dual = json::cdual_text(rep.c_dual);
    rec.conditions = Condition::ALL
        .iter()
        .map(|c| (c.name().to_string(), rep.holds(*c)))
        .collect();
    rec.evidence = rep
        .triggered()
        .into_iter()
        .map(|c| {
            let sets = rep.evidence(c).iter().map(|s| s.to_vec()).collect();
            (c.name().to_string(), sets)
        })
        .collect();
    rec.l3_mixed_only = rep.l3_mixed_only();
}

const CHUNK: usize = 256;

fn write_line(out: &mut impl Write, line: &Line) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, line)?;
    out.write_all(b"\n")
}

#[derive(Debug, thiserror::Error)]
pub enum CampaignError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Parse(String),
}

/// Runs a campaign, streaming the header, records in key order and a summary line.
///
/// Items are evaluated in parallel a chunk at a time; each chunk is written in order
/// before the next starts.
pub fn run_campaign(cfg: &CampaignConfig, out: &mut impl Write) -> std::result::Result<Summary, CampaignError> {
    let (mut items, census) = items(cfg)?;
    let mut keyed: Vec<(String, usize, Item)> = items
        .drain(..)
        .enumerate()
        .map(|(i, it)| {
            let key = canonical_key(&it.g).map(|k| k.to_hex()).unwrap_or_default();
            (key, i, it)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
    let regime = cfg.source.label();
    write_line(
        out,
        &Line::Header(Header {
            config: Some(cfg.clone()),
            regime: regime.to_string(),
            census,
            merged_from: Vec::new(),
        }),
    )?;
    let mut summary = Summary::default();
    for chunk in keyed.chunks(CHUNK) {
        let records: Vec<VerdictRecord> = chunk
            .par_iter()
            .map_init(KeyCache::new, |cache, (_, _, item)| evaluate(item, cfg, regime, cache))
            .collect();
        for r in records {
            summary.add(&r);
            write_line(out, &Line::Record(r))?;
        }
    }
    write_line(out, &Line::Summary(summary.clone()))?;
    out.flush()?;
    Ok(summary)
}

pub fn read_lines(input: impl BufRead) -> std::result::Result<Vec<Line>, CampaignError> {
    let mut lines = Vec::new();
    for (i, text) in input.lines().enumerate() {
        let text = text?;
        if text.is_empty() {
            continue;
        }
        let line = serde_json::from_str(&text)
            .map_err(|e| CampaignError::Parse(format!("line {}: {e}", i + 1)))?;
        lines.push(line);
    }
    Ok(lines)
}

/// Concatenates the records of several campaign outputs and re-sorts them by key.
pub fn merge(
    inputs: &[(String, Vec<Line>)],
    out: &mut impl Write,
) -> std::result::Result<Summary, CampaignError> {
    let mut records: Vec<VerdictRecord> = inputs
        .iter()
        .flat_map(|(_, lines)| lines.iter())
        .filter_map(|l| match l {
            Line::Record(r) => Some(r.clone()),
            _ => None,
        })
        .collect();
    records.sort_by(|a, b| (a.key.len(), &a.key).cmp(&(b.key.len(), &b.key)));
    write_line(
        out,
        &Line::Header(Header {
            config: None,
            regime: "merged".into(),
            census: Vec::new(),
            merged_from: inputs.iter().map(|(name, _)| name.clone()).collect(),
        }),
    )?;
    let mut summary = Summary::default();
    for r in records {
        summary.add(&r);
        write_line(out, &Line::Record(r))?;
    }
    write_line(out, &Line::Summary(summary.clone()))?;
    out.flush()?;
    Ok(summary)
}

/// A JSONL line with its timing field removed, for byte comparisons between runs.
pub fn strip_timing(line: &str) -> String {
    match line.rfind(",\"timing_us\":") {
        Some(pos) => format!("{}}}", &line[..pos]),
        None => line.to_string(),
    }
}

/// Recomputes a record from its `.dg` text and checks the evidence against the
/// structure module. Returns the list of mismatches.
pub fn replay(rec: &VerdictRecord) -> Vec<String> {
    let mut problems = Vec::new();
    let g = match dg::parse(&rec.dg) {
        Ok(g) => g,
        Err(e) => return vec![format!("dg does not parse: {e}")],
    };
    match canonical_key(&g) {
        Ok(k) if k.to_hex() == rec.key => {}
        _ => problems.push("key does not match".into()),
    }
    let rep = hemireco_core::report(&g);
    let mut fresh = rec.clone();
    fill_report(&mut fresh, &rep);
    if fresh.conditions != rec.conditions {
        problems.push("conditions differ".into());
    }
    if fresh.evidence != rec.evidence {
        problems.push("evidence differs".into());
    }
    if fresh.c_dual != rec.c_dual {
        problems.push("c_dual differs".into());
    }
    problems.extend(check_evidence(&g, &rep));
    for v in &rec.verdicts {
        match verdict_from(&rep, v.k) {
            Ok(fresh) if fresh.half_reconstructible == v.half_reconstructible => {}
            _ => problems.push(format!("verdict at k={} differs", v.k)),
        }
        if !v.flipped.is_empty() {
            let mut h = g.clone();
            for &(i, j) in &v.flipped {
                h = h.reverse_within(hemireco_core::VertexSet::from_iter([i, j]));
            }
            match hemireco_core::witness::verify_witness(&g, &h, v.k) {
                Ok(c) if c.is_witness() => {}
                _ => problems.push(format!("recorded flip at k={} is not a witness", v.k)),
            }
        }
    }
    problems
}

/// Checks that a report's evidence holds up: interval evidence passes the interval
/// test, component evidence matches the components, flags are flags and component
/// `c_dual` values recompute.
pub fn check_evidence(g: &Digraph, rep: &ConditionReport) -> Vec<String> {
    let mut problems = Vec::new();
    let comps = hemireco_core::structure::arc_connected_components(g);
    if comps != rep.components {
        problems.push("components differ".into());
    }
    for c in rep.triggered() {
        for s in rep.evidence(c) {
            let interval = is_interval(g, s).unwrap_or(false);
            let component = comps.contains_class(s);
            let ok = match c {
                Condition::L1 | Condition::L2 => {
                    let h = g.induced(s).expect("evidence lies in range");
                    interval
                        && !component
                        && is_diamond_free_tournament(&h)
                        && !is_isomorphic(&h, &h.dual())
                }
                Condition::K3 => interval && component,
                _ => component,
            };
            if !ok {
                problems.push(format!("{} evidence {:?} fails", c.name(), s));
            }
        }
        for f in rep.evidence_flags(c) {
            if !g.induced(f.vertices()).map(|h| is_flag(&h)).unwrap_or(false) {
                problems.push(format!("{} flag {:?} is not a flag", c.name(), f));
            }
        }
    }
    for f in &rep.flags {
        if !g.induced(f.vertices()).map(|h| is_flag(&h)).unwrap_or(false) {
            problems.push(format!("flag {f:?} is not a flag"));
        }
    }
    for &(s, cd) in &rep.nsd_interval_components {
        if g.induced(s).map(|h| c_dual(&h)) != Ok(cd) {
            problems.push(format!("c_dual of {s:?} does not recompute"));
        }
    }
    problems
}
