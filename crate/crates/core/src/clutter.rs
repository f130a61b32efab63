//! Hypergraph formulation of the code problems and its reduction to a clutter.
//!
//! A vertex set is an X-code exactly when it meets every hyperedge of the
//! X-hypergraph, so the X-number is the covering number of that hypergraph.
//! Removing duplicate and superset edges leaves the covering number unchanged.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kind::{CodeKind, Domination};
use crate::vset::VertexSet;

/// Where a hyperedge came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Origin {
    /// Domination edge of vertex `v` (closed or open neighbourhood).
    Neighborhood { v: usize },
    /// Separation edge of the pair `u < v`.
    Separation { u: usize, v: usize },
    /// Supplied directly (q-roses, JSON input).
    External { index: usize },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Neighborhood { v } => write!(f, "N({v})"),
            Origin::Separation { u, v } => write!(f, "D({u},{v})"),
            Origin::External { index } => write!(f, "#{index}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<(VertexSet, Origin)>,
}

/// Builds the X-hypergraph: one domination edge per vertex, one separation
/// edge per unordered pair.
pub fn build_hypergraph(g: &Graph, kind: CodeKind) -> Result<Hypergraph> {
    g.require_admissible(kind)?;
    Ok(build_hypergraph_unchecked(g, kind))
}

/// As [`build_hypergraph`] without the admissibility check; the result may
/// contain empty edges.
pub fn build_hypergraph_unchecked(g: &Graph, kind: CodeKind) -> Hypergraph {
    let n = g.n();
    let mut edges = Vec::with_capacity(n + n * n.saturating_sub(1) / 2);
    for v in 0..n {
        let e = match kind.domination() {
            Domination::Closed => g.closed_nbhd(v).unwrap(),
            Domination::Open => g.open_nbhd(v).unwrap(),
        };
        edges.push((e, Origin::Neighborhood { v }));
    }
    for u in 0..n {
        for v in u + 1..n {
            let e = g.separation_set(u, v, kind.separation()).unwrap();
            edges.push((e, Origin::Separation { u, v }));
        }
    }
    Hypergraph { n, edges }
}

/// A reduced hypergraph: no edge contains another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clutter {
    pub n: usize,
    /// Edges sorted by size, then lexicographically.
    pub edges: Vec<VertexSet>,
    /// Every origin that produced each edge (parallel to `edges`).
    pub provenance: Vec<Vec<Origin>>,
    /// Vertices forming singleton edges.
    pub f1: VertexSet,
    /// Edges of size at least two.
    pub f2: Vec<VertexSet>,
    /// Union of all edges.
    pub ground: VertexSet,
    /// Vertices in no edge.
    pub v0: VertexSet,
}

/// Removes duplicate and superset edges and derives `f1`, `f2`, `ground`, `v0`.
pub fn reduce(h: &Hypergraph) -> Result<Clutter> {
    let mut grouped: BTreeMap<VertexSet, Vec<Origin>> = BTreeMap::new();
    for (e, o) in &h.edges {
        if e.is_empty() {
            return Err(Error::EmptyEdge { origin: o.to_string() });
        }
        let mut e = e.clone();
        if e.width() < h.n {
            e = e.union(&VertexSet::empty(h.n));
        }
        grouped.entry(e).or_default().push(*o);
    }
    // Ascending size order means any proper subset of an edge is seen first.
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut provenance = Vec::new();
    for (e, mut origins) in grouped {
        if edges.iter().any(|k| k.is_subset(&e)) {
            continue;
        }
        origins.sort();
        edges.push(e);
        provenance.push(origins);
    }
    Ok(finish(h.n, edges, provenance))
}

fn finish(n: usize, edges: Vec<VertexSet>, provenance: Vec<Vec<Origin>>) -> Clutter {
    let mut f1 = VertexSet::empty(n);
    let mut ground = VertexSet::empty(n);
    let mut f2 = Vec::new();
    for e in &edges {
        ground.union_with(e);
        if e.len() == 1 {
            f1.union_with(e);
        } else {
            f2.push(e.clone());
        }
    }
    let v0 = ground.complement();
    Clutter {
        n,
        edges,
        provenance,
        f1,
        f2,
        ground,
        v0,
    }
}

impl Clutter {
    /// Reduces an explicit edge list over `0..n`.
    pub fn from_edges(n: usize, edges: Vec<VertexSet>) -> Result<Clutter> {
        for e in &edges {
            if let Some(v) = e.iter().find(|&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let h = Hypergraph {
            n,
            edges: edges
                .into_iter()
                .enumerate()
                .map(|(index, e)| (e, Origin::External { index }))
                .collect(),
        };
        reduce(&h)
    }

    /// The X-clutter of a graph.
    pub fn of_graph(g: &Graph, kind: CodeKind) -> Result<Clutter> {
        reduce(&build_hypergraph(g, kind)?)
    }

    /// Whether `s` meets every edge.
    pub fn is_cover(&self, s: &VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(s))
    }

    pub fn is_antichain(&self) -> bool {
        for (i, a) in self.edges.iter().enumerate() {
            for (j, b) in self.edges.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Edges as sorted member lists, in clutter order.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(VertexSet::to_vec).collect()
    }
}

/// Forced vertices computed directly from the graph: isolated vertices plus
/// every `y` with `N(u) Δ N(v) = {y}` for some non-adjacent pair `u, v`.
pub fn forced_vertices_direct(g: &Graph) -> Result<VertexSet> {
    g.require_admissible(CodeKind::Od)?;
    let n = g.n();
    let mut out = VertexSet::from_iter_n(n, g.isolated_vertices());
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let d = g.delta_open(u, v)?;
            if d.len() == 1 {
                out.union_with(&d);
            }
        }
    }
    Ok(out)
}

/// The q-rose `R^q_n`: all `q`-subsets of `0..n`. A set covers it iff it
/// misses at most `q-1` vertices.
pub fn q_rose(n: usize, q: usize) -> Result<Clutter> {
    if q < 2 || q >= n {
        return Err(Error::RoseParameters { n, q });
    }
    let edges = itertools::Itertools::combinations(0..n, q)
        .map(|c| VertexSet::from_iter_n(n, c))
        .collect();
    Clutter::from_edges(n, edges)
}
