use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hemireco"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn decide_exit_codes() {
    let hr = fixture("smallest_dft.dg");
    let out = run(&["decide", "--input", hr.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["verdict"]["half_reconstructible"], true);

    let l4 = fixture("l4_flag_p.dg");
    let out = run(&["decide", "--input", l4.to_str().unwrap(), "--k", "6"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["verdict"]["triggering"][0], "L4");

    let out = run(&["decide", "--input", l4.to_str().unwrap(), "--k", "7"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["decide", "--input", l4.to_str().unwrap(), "--k", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.dg");
    std::fs::write(&p, "n=2\n01\n1\n").unwrap();
    let out = run(&["parse", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["parse", "--input", dir.path().join("missing.dg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_exit_code() {
    let k1 = fixture("k1_t_tdual_flag.dg");
    let out = run(&["oracle", "--input", k1.to_str().unwrap(), "--k", "7"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn witness_and_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let src = fixture("series_t_t.dg");
    let out = run(&["witness", "--input", src.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let w = json_of(&out);
    assert_eq!(w["method"], "L-construction");
    assert_eq!(w["certificate"]["is_witness"], true);
    let mate = dir.path().join("mate.dg");
    std::fs::write(&mate, w["witness"].as_str().unwrap()).unwrap();
    let out = run(&[
        "verify",
        "--input",
        src.to_str().unwrap(),
        "--against",
        mate.to_str().unwrap(),
    ]);
    let cert = json_of(&out);
    assert_eq!(cert["leq_k_hemimorphic"], true);
    assert_eq!(cert["hemimorphic"], false);
    assert_eq!(cert["sizes"].as_array().unwrap().len(), 6);
}

#[test]
fn structure_subcommands() {
    let p = fixture("l4_flag_p.dg");
    let p = p.to_str().unwrap();
    let comps = json_of(&run(&["components", "--input", p]));
    assert_eq!(comps["components"], serde_json::json!([[0, 1], [2, 3, 4, 5, 6]]));
    let cd = json_of(&run(&["cdual", "--input", p]));
    assert_eq!(cd["c_dual"], 3);
    let iv = json_of(&run(&["intervals", "--input", p]));
    assert!(iv["intervals"].as_array().unwrap().contains(&serde_json::json!([2, 3, 4, 5, 6])));
    let cl = json_of(&run(&["classify", "--input", fixture("smallest_dft.dg").to_str().unwrap()]));
    assert!(cl["classes"].as_array().unwrap().contains(&"diamond_free_tournament".into()));
    let cond = json_of(&run(&["conditions", "--input", p]));
    assert_eq!(cond["conditions"]["L4"], true);
    let text = run(&["cdual", "--input", p, "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("c_dual: 3"));
}

#[test]
fn dot_export_and_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = run(&[
        "parse",
        "--input",
        fixture("l4_flag_p.dg").to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph") && text.contains("dir=both"));

    let out = run(&["enumerate", "--n", "4", "--class", "tournaments"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 4);
    let out = run(&["enumerate", "--n", "7"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn campaign_and_merge() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let m = dir.path().join("m.jsonl");
    for (path, class) in [(&a, "all"), (&b, "tournaments")] {
        let out = run(&[
            "campaign", "--n-min", "3", "--n-max", "4", "--class", class, "--k", "6,7", "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(&["merge", a.to_str().unwrap(), b.to_str().unwrap(), "--out", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&m).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["type"], "header");
    assert_eq!(lines.last().unwrap()["type"], "summary");
    let keys: Vec<&str> = lines[1..lines.len() - 1]
        .iter()
        .map(|r| r["key"].as_str().unwrap())
        .collect();
    assert_eq!(keys.len(), 16 + 218 + 2 + 4);
    let mut sorted = keys.clone();
    sorted.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    assert_eq!(keys, sorted);
}
