//! Plain-text edge-list interchange.
//!
//! ```text
//! n m
//! u v          (m lines, 0-based, u < v)
//! # interior: a b c ...
//! # stubs: v k (one line per vertex with k > 0)
//! ```
//!
//! The two `#` lines are the window extension. A closed window is written
//! without them. When a file has stub lines but no interior line, the
//! interior is every vertex without stubs.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Window};

const INTERIOR_TAG: &str = "# interior:";
const STUBS_TAG: &str = "# stubs:";

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

pub fn write_window(w: &Window) -> String {
    let mut out = write_graph(&w.graph);
    if w.is_closed() {
        return out;
    }
    out.push_str(INTERIOR_TAG);
    for v in w.interior_vertices() {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    for v in w.graph.vertices() {
        if w.stubs(v) > 0 {
            let _ = writeln!(out, "{STUBS_TAG} {v} {}", w.stubs(v));
        }
    }
    out
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .or_else(|_| parse_err(line, format!("expected a nonnegative integer, found {tok:?}")))
}

fn parse_fields<const N: usize>(text: &str, line: usize) -> Result<[usize; N]> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != N {
        return parse_err(line, format!("expected {N} integers, found {}", toks.len()));
    }
    let mut out = [0; N];
    for (slot, tok) in out.iter_mut().zip(toks) {
        *slot = parse_usize(tok, line)?;
    }
    Ok(out)
}

/// Parses a graph or window. Line numbers in errors are 1-based.
pub fn parse_window(text: &str) -> Result<Window> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .map_or_else(|| parse_err(1, "missing header \"n m\""), Ok)?;
    let [n, m] = parse_fields::<2>(header, header_line)?;

    let mut edges = Vec::with_capacity(m);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut last_line = header_line;
    for _ in 0..m {
        let Some((ln, l)) = lines.next() else {
            return parse_err(last_line + 1, format!("expected {m} edge lines"));
        };
        last_line = ln;
        let [u, v] = parse_fields::<2>(l, ln)?;
        if u >= n || v >= n {
            return parse_err(ln, format!("vertex out of range (n = {n})"));
        }
        if u == v {
            return parse_err(ln, "loop edge");
        }
        if adj[u].contains(&v) {
            return parse_err(ln, "repeated edge");
        }
        adj[u].push(v);
        adj[v].push(u);
        edges.push((u, v));
    }
    let graph = Graph::from_edges(n, edges).expect("edges validated above");

    let mut interior: Option<Vec<usize>> = None;
    let mut stubs = vec![0usize; n];
    for (ln, l) in lines {
        let t = l.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix(INTERIOR_TAG) {
            if interior.is_some() {
                return parse_err(ln, "duplicate interior line");
            }
            let ids = rest
                .split_whitespace()
                .map(|tok| {
                    let v = parse_usize(tok, ln)?;
                    if v >= n {
                        return parse_err(ln, format!("vertex {v} out of range"));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            interior = Some(ids);
        } else if let Some(rest) = t.strip_prefix(STUBS_TAG) {
            let [v, k] = parse_fields::<2>(rest, ln)?;
            if v >= n {
                return parse_err(ln, format!("vertex {v} out of range"));
            }
            stubs[v] += k;
        } else {
            return parse_err(ln, format!("unexpected content {t:?}"));
        }
    }

    let mask = match interior {
        Some(ids) => {
            let mut mask = vec![false; n];
            for v in ids {
                mask[v] = true;
            }
            mask
        }
        None => stubs.iter().map(|&k| k == 0).collect(),
    };
    Window::new(graph, mask, stubs).map_err(|e| Error::Parse {
        line: last_line,
        message: e.to_string(),
    })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_window(text).map(|w| w.graph)
}
