//! Graphviz export: directed pairs as arrows, full pairs as double-ended edges, void
//! pairs omitted.

use std::fmt::Write as _;

use hemireco_core::{Digraph, PairState};

pub fn to_dot(g: &Digraph, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "\\\""));
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v};");
    }
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let line = match g.pair_state(i, j).expect("vertices in range") {
                PairState::Forward => format!("  {i} -> {j};"),
                PairState::Backward => format!("  {j} -> {i};"),
                PairState::Full => format!("  {i} -> {j} [dir=both];"),
                PairState::Void => continue,
            };
            s.push_str(&line);
            s.push('\n');
        }
    }
    s.push_str("}\n");
    s
}
