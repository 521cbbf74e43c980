//! The `.dg` adjacency-matrix text format.
//!
//! ```text
//! n=3
//! 010
//! 001
//! 010
//! ```
//!
//! Character `j` of matrix line `i` is `1` iff the arc `(i, j)` is present. The
//! diagonal must be `0`. A single trailing newline is accepted; nothing else is.

use std::fmt::Write as _;
use std::path::Path;

use hemireco_core::digraph::MAX_VERTICES;
use hemireco_core::Digraph;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DgError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

fn syntax(line: usize, msg: impl Into<String>) -> DgError {
    DgError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> Result<Digraph, DgError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let n_text = header
        .strip_prefix("n=")
        .ok_or_else(|| syntax(1, "expected a header of the form n=<int>"))?;
    if n_text.is_empty() || !n_text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(1, format!("invalid vertex count {n_text:?}")));
    }
    let n: usize = n_text
        .parse()
        .map_err(|_| syntax(1, format!("invalid vertex count {n_text:?}")))?;
    if n > MAX_VERTICES {
        return Err(syntax(1, format!("at most {MAX_VERTICES} vertices are supported")));
    }
    let mut rows = vec![0u64; n];
    let mut count = 0;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if i >= n {
            return Err(syntax(lineno, "more matrix lines than vertices"));
        }
        if line.len() != n {
            return Err(syntax(
                lineno,
                format!("expected {n} characters, found {}", line.len()),
            ));
        }
        for (j, c) in line.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' if i == j => return Err(syntax(lineno, "loops are not allowed")),
                b'1' => rows[i] |= 1 << j,
                _ => {
                    return Err(syntax(
                        lineno,
                        format!("unexpected character {:?}", c as char),
                    ))
                }
            }
        }
        count += 1;
    }
    if count != n {
        return Err(syntax(count + 2, format!("expected {n} matrix lines, found {count}")));
    }
    Ok(Digraph::from_out_rows(rows).expect("rows validated"))
}

pub fn to_string(g: &Digraph) -> String {
    let n = g.n();
    let mut s = String::with_capacity((n + 1) * (n + 1) + 4);
    let _ = writeln!(s, "n={n}");
    for i in 0..n {
        for j in 0..n {
            s.push(if g.has_arc(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

pub fn read(path: &Path) -> Result<Digraph, DgError> {
    let text = std::fs::read_to_string(path).map_err(|e| DgError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse(&text)
}
