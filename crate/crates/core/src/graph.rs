use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::kind::{CodeKind, Separation};
use crate::vset::VertexSet;

/// Finite simple graph on vertices `0..n`.
///
/// Immutable once built. Optional string labels record roles assigned by
/// generators (family roles, gadget roles) and are carried through I/O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: BTreeMap<usize, String>,
}

/// Outcome of an admissibility test with the offending vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub twin_pairs: Vec<(usize, usize)>,
    pub isolated: Vec<usize>,
}

impl Admissibility {
    pub fn reason(&self) -> String {
        let mut parts = Vec::new();
        if !self.twin_pairs.is_empty() {
            let pairs: Vec<String> = self
                .twin_pairs
                .iter()
                .map(|(u, v)| format!("({u},{v})"))
                .collect();
            parts.push(format!("twin pairs {}", pairs.join(" ")));
        }
        if !self.isolated.is_empty() {
            let vs: Vec<String> = self.isolated.iter().map(|v| v.to_string()).collect();
            parts.push(format!("isolated vertices {}", vs.join(" ")));
        }
        if parts.is_empty() {
            "admissible".to_string()
        } else {
            parts.join("; ")
        }
    }
}

/// Incremental, validating construction of a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    adj: Vec<VertexSet>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            adj: vec![VertexSet::empty(n); n],
            labels: BTreeMap::new(),
        }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds `uv`. Loops and repeated edges are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        if self.adj[u].contains(v) {
            return Err(Error::GraphFormat {
                line: 0,
                message: format!("duplicate edge {u} {v}"),
            });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(self)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn label(&mut self, v: usize, label: impl Into<String>) -> Result<&mut Self> {
        self.check(v)?;
        self.labels.insert(v, label.into());
        Ok(self)
    }

    pub fn build(self) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj,
            labels: self.labels,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Index of the vertex carrying `label`, if any.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&v, _)| v)
    }

    /// Returns a copy with the given labels replacing the current ones.
    pub fn with_labels(&self, labels: BTreeMap<usize, String>) -> Result<Graph> {
        if let Some(&v) = labels.keys().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(Graph {
            labels,
            ..self.clone()
        })
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Open neighbourhood `N(v)`, borrowed without bounds checking beyond indexing.
    pub fn nbrs(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn open_nbhd(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.adj[v].clone())
    }

    pub fn closed_nbhd(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        let mut s = self.adj[v].clone();
        s.insert(v);
        Ok(s)
    }

    pub fn delta_open(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(self.adj[u].symmetric_difference(&self.adj[v]))
    }

    pub fn delta_closed(&self, u: usize, v: usize) -> Result<VertexSet> {
        let nu = self.closed_nbhd(u)?;
        let nv = self.closed_nbhd(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(nu.symmetric_difference(&nv))
    }

    /// Separation hyperedge of the pair for the given separation mode.
    pub fn separation_set(&self, u: usize, v: usize, sep: Separation) -> Result<VertexSet> {
        match sep {
            Separation::OpenSeparating => self.delta_open(u, v),
            Separation::ClosedSeparating => self.delta_closed(u, v),
            Separation::Locating => {
                let mut d = self.delta_open(u, v)?;
                d.insert(u);
                d.insert(v);
                Ok(d)
            }
        }
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Unordered pairs `(u, v)`, `u < v`, with `N(u) = N(v)`.
    pub fn open_twins(&self) -> Vec<(usize, usize)> {
        self.twins(|v| self.adj[v].clone())
    }

    /// Unordered pairs `(u, v)`, `u < v`, with `N[u] = N[v]`.
    pub fn closed_twins(&self) -> Vec<(usize, usize)> {
        self.twins(|v| {
            let mut s = self.adj[v].clone();
            s.insert(v);
            s
        })
    }

    fn twins(&self, nb: impl Fn(usize) -> VertexSet) -> Vec<(usize, usize)> {
        let sets: Vec<VertexSet> = (0..self.n).map(nb).collect();
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if sets[u] == sets[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn admissibility(&self, kind: CodeKind) -> Admissibility {
        let twin_pairs = match kind.separation() {
            Separation::OpenSeparating => self.open_twins(),
            Separation::ClosedSeparating => self.closed_twins(),
            Separation::Locating => Vec::new(),
        };
        let isolated = match kind.domination() {
            crate::kind::Domination::Open => self.isolated_vertices(),
            crate::kind::Domination::Closed => Vec::new(),
        };
        Admissibility {
            admissible: twin_pairs.is_empty() && isolated.is_empty(),
            twin_pairs,
            isolated,
        }
    }

    pub fn is_admissible(&self, kind: CodeKind) -> bool {
        self.admissibility(kind).admissible
    }

    /// Errors with the reason when the graph has no code of this kind.
    pub fn require_admissible(&self, kind: CodeKind) -> Result<()> {
        let a = self.admissibility(kind);
        if a.admissible {
            Ok(())
        } else {
            Err(Error::Inadmissible {
                kind,
                reason: a.reason(),
            })
        }
    }

    fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for y in self.adj[x].iter() {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Shortest-path distance, `None` when `u` and `v` lie in different components.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.bfs(u)[v])
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.adj[x].iter() {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Proper 2-colouring (`false`/`true` per vertex) if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for y in self.adj[x].iter() {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// `self ⊕ other`: vertices of `other` are shifted by `self.n()`.
    /// Labels of both operands are kept (shifted for `other`).
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut b = GraphBuilder::new(n);
        for (u, v) in self.edges() {
            b.add_edge(u, v).expect("edges of a valid graph");
        }
        for (u, v) in other.edges() {
            b.add_edge(u + self.n, v + self.n).expect("edges of a valid graph");
        }
        b.labels = self.labels.clone();
        for (&v, l) in &other.labels {
            b.labels.insert(v + self.n, l.clone());
        }
        b.build()
    }

    /// Subgraph induced by `keep`, reindexed in increasing order. Labels follow.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let order: Vec<usize> = keep.iter().filter(|&v| v < self.n).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let mut b = GraphBuilder::new(order.len());
        for (u, v) in self.edges() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                b.add_edge(index[u], index[v]).expect("induced edge");
            }
        }
        for (&v, l) in &self.labels {
            if index[v] != usize::MAX {
                b.labels.insert(index[v], l.clone());
            }
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_iter_n(n, xs.iter().copied())
    }

    #[test]
    fn neighbourhoods_on_p4() {
        let g = p4();
        assert_eq!(g.open_nbhd(1).unwrap(), set(4, &[0, 2]));
        assert_eq!(g.closed_nbhd(1).unwrap(), set(4, &[0, 1, 2]));
        assert!(g.open_nbhd(4).is_err());
    }

    #[test]
    fn deltas_on_p4() {
        let g = p4();
        // 1-indexed N(1)ΔN(3) = {4}, N(1)ΔN(4) = {2,3}
        assert_eq!(g.delta_open(0, 2).unwrap(), set(4, &[3]));
        assert_eq!(g.delta_open(0, 3).unwrap(), set(4, &[1, 2]));
        assert_eq!(g.delta_closed(0, 1).unwrap(), set(4, &[2]));
        assert_eq!(g.delta_open(2, 2), Err(Error::SameVertex(2)));
        assert_eq!(g.delta_closed(2, 2), Err(Error::SameVertex(2)));
    }

    #[test]
    fn isolated_pair_is_open_twin_and_closed_separated() {
        let g = Graph::empty(2);
        assert_eq!(g.open_twins(), vec![(0, 1)]);
        assert!(g.closed_twins().is_empty());
        assert_eq!(g.delta_closed(0, 1).unwrap(), set(2, &[0, 1]));
        assert!(!g.is_admissible(CodeKind::Od));
        assert!(g.is_admissible(CodeKind::Ld));
        assert!(!g.is_admissible(CodeKind::Ltd));
    }

    #[test]
    fn star_leaves_are_open_twins() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.open_twins(), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn distance_and_girth() {
        let g = p4();
        assert_eq!(g.distance(0, 3).unwrap(), Some(3));
        assert_eq!(g.girth(), None);
        let two = g.disjoint_union(&Graph::empty(1));
        assert_eq!(two.distance(0, 4).unwrap(), None);
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert_eq!(c6.girth(), Some(6));
        assert!(c6.is_bipartite());
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.girth(), Some(3));
        assert!(!k3.is_bipartite());
    }

    #[test]
    fn girth_finds_odd_cycle_behind_a_tail() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn disjoint_union_shifts_labels() {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1).unwrap().label(1, "x").unwrap();
        let k2 = b.build();
        let u = k2.disjoint_union(&k2);
        assert_eq!(u.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(u.label(3), Some("x"));
        assert_eq!(u.max_degree(), 1);
    }
}
