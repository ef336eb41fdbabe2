//! Edge-list text format: one `u v` pair per line, 0-based, `u < v`.
//! Blank lines and lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub fn write_edge_list(edges: &[(u32, u32)]) -> String {
    let mut s = String::with_capacity(edges.len() * 12);
    for &(u, v) in edges {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}

/// Parsed edges, normalised to `u < v`, sorted and deduplicated.
pub fn read_edge_list(text: &str) -> Result<Vec<(u32, u32)>, EdgeListError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| EdgeListError::Parse { line: i + 1, msg: msg.to_string() };
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(err("expected two integers"));
        };
        let u: u32 = a.parse().map_err(|_| err("bad vertex id"))?;
        let v: u32 = b.parse().map_err(|_| err("bad vertex id"))?;
        if u == v {
            return Err(err("self-loop"));
        }
        out.push(if u < v { (u, v) } else { (v, u) });
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
