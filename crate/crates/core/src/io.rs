//! Graph text and JSON formats.
//!
//! Text: a header line `n m`, then `m` lines `u v` with `0 <= u < v < n`.
//! Lines starting with `#` are comments, except `#role <v> <label>` which
//! attaches a label to vertex `v`.
//!
//! JSON: `{"n": 4, "edges": [[0,1],[1,2]], "labels": {"0": "w_x1"}}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

fn fmt_err(line: usize, message: impl Into<String>) -> Error {
    Error::GraphFormat {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder: Option<GraphBuilder> = None;
    let mut seen = 0usize;
    let mut pending_labels: Vec<(usize, usize, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let mut it = rest.split_whitespace();
            if it.next() == Some("role") {
                let v = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| fmt_err(lineno, "role line needs a vertex index"))?;
                let label = it.collect::<Vec<_>>().join(" ");
                if label.is_empty() {
                    return Err(fmt_err(lineno, "role line needs a label"));
                }
                pending_labels.push((lineno, v, label));
            }
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| fmt_err(lineno, format!("not a non-negative integer: `{t}`")))
            })
            .collect::<Result<_>>()?;
        if nums.len() != 2 {
            return Err(fmt_err(lineno, format!("expected two integers, found {}", nums.len())));
        }
        match header {
            None => {
                header = Some((nums[0], nums[1]));
                builder = Some(GraphBuilder::new(nums[0]));
            }
            Some((n, m)) => {
                let (u, v) = (nums[0], nums[1]);
                if u >= v {
                    let what = if u == v { "self-loop" } else { "edge must satisfy u < v" };
                    return Err(fmt_err(lineno, format!("{what}: {u} {v}")));
                }
                if v >= n {
                    return Err(fmt_err(lineno, format!("vertex {v} out of range (n = {n})")));
                }
                seen += 1;
                if seen > m {
                    return Err(fmt_err(lineno, format!("more than the declared {m} edges")));
                }
                let b = builder.as_mut().unwrap();
                if b.has_edge(u, v) {
                    return Err(fmt_err(lineno, format!("duplicate edge {u} {v}")));
                }
                b.add_edge(u, v).map_err(|e| fmt_err(lineno, e.to_string()))?;
            }
        }
    }

    let (n, m) = header.ok_or_else(|| fmt_err(0, "missing `n m` header"))?;
    if seen != m {
        return Err(fmt_err(0, format!("header declares {m} edges, found {seen}")));
    }
    let mut b = builder.unwrap();
    for (lineno, v, label) in pending_labels {
        if v >= n {
            return Err(fmt_err(lineno, format!("role vertex {v} out of range (n = {n})")));
        }
        b.label(v, label)?;
    }
    Ok(b.build())
}

/// Writes the text format, with one `#role` line per labelled vertex.
pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    for (v, l) in g.labels() {
        writeln!(out, "#role {v} {l}").unwrap();
    }
    writeln!(out, "{} {}", g.n(), edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, String>,
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let jg: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let mut b = GraphBuilder::new(jg.n);
    for [a, c] in jg.edges {
        let (u, v) = (a.min(c), a.max(c));
        if u == v {
            return Err(Error::Json(format!("self-loop at {u}")));
        }
        if v >= jg.n {
            return Err(Error::Json(format!("vertex {v} out of range (n = {})", jg.n)));
        }
        if b.has_edge(u, v) {
            return Err(Error::Json(format!("duplicate edge {u} {v}")));
        }
        b.add_edge(u, v)?;
    }
    for (k, l) in jg.labels {
        let v: usize = k
            .parse()
            .map_err(|_| Error::Json(format!("label key `{k}` is not a vertex index")))?;
        if v >= jg.n {
            return Err(Error::Json(format!("label vertex {v} out of range (n = {})", jg.n)));
        }
        b.label(v, l)?;
    }
    Ok(b.build())
}

pub fn write_graph_json(g: &Graph) -> String {
    let jg = JsonGraph {
        n: g.n(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        labels: g
            .labels()
            .iter()
            .map(|(v, l)| (v.to_string(), l.clone()))
            .collect(),
    };
    serde_json::to_string(&jg).expect("graph serializes")
}

/// Picks the JSON reader when the input starts with `{`.
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph(text)
    }
}
