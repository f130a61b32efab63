//! Code verification, code numbers, and the relations between them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::cover::{min_cover, CoverResult};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kind::{CodeKind, Domination, Separation};
use crate::vset::VertexSet;

/// Reports list at most this many violations.
pub const MAX_VIOLATIONS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unseparated {
    pub u: usize,
    pub v: usize,
    /// The shared trace of `u` and `v` on the code.
    pub trace: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: CodeKind,
    pub valid: bool,
    pub undominated: Vec<usize>,
    pub unseparated: Vec<Unseparated>,
    /// More violations exist than were listed.
    pub truncated: bool,
}

fn trace(g: &Graph, v: usize, c: &VertexSet, closed: bool) -> VertexSet {
    let mut t = g.nbrs(v).intersection(c);
    if closed && c.contains(v) {
        t.insert(v);
    }
    t
}

/// Checks `c` against the definition of an X-code. Works on any graph.
pub fn verify(g: &Graph, c: &VertexSet, kind: CodeKind) -> VerificationReport {
    let n = g.n();
    let c = &VertexSet::from_iter_n(n, c.iter().filter(|&v| v < n));
    let mut undominated = Vec::new();
    let mut unseparated = Vec::new();
    let mut truncated = false;
    let mut room = MAX_VIOLATIONS;

    let dom_closed = kind.domination() == Domination::Closed;
    for v in 0..n {
        if trace(g, v, c, dom_closed).is_empty() {
            if room == 0 {
                truncated = true;
                break;
            }
            undominated.push(v);
            room -= 1;
        }
    }

    let sep_closed = kind.separation() == Separation::ClosedSeparating;
    let locating = kind.separation() == Separation::Locating;
    let traces: Vec<VertexSet> = (0..n).map(|v| trace(g, v, c, sep_closed)).collect();
    'outer: for u in 0..n {
        if locating && c.contains(u) {
            continue;
        }
        for v in u + 1..n {
            if locating && c.contains(v) {
                continue;
            }
            if traces[u] == traces[v] {
                if room == 0 {
                    truncated = true;
                    break 'outer;
                }
                unseparated.push(Unseparated {
                    u,
                    v,
                    trace: traces[u].clone(),
                });
                room -= 1;
            }
        }
    }

    VerificationReport {
        kind,
        valid: undominated.is_empty() && unseparated.is_empty(),
        undominated,
        unseparated,
        truncated,
    }
}

pub fn is_code(g: &Graph, c: &VertexSet, kind: CodeKind) -> bool {
    verify(g, c, kind).valid
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaResult {
    pub kind: CodeKind,
    pub value: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
}

/// Minimum X-code through the clutter pipeline.
pub fn gamma(g: &Graph, kind: CodeKind) -> Result<GammaResult> {
    let r = gamma_cover(g, kind, false, 0)?;
    Ok(GammaResult {
        kind,
        value: r.value,
        witness: r.witness,
        nodes_explored: r.nodes_explored,
    })
}

/// Full solver output, optionally with all minimum codes (up to `cap`).
pub fn gamma_cover(g: &Graph, kind: CodeKind, enumerate: bool, cap: usize) -> Result<CoverResult> {
    let c = Clutter::of_graph(g, kind)?;
    let r = min_cover(&c, enumerate, cap);
    let report = verify(g, &r.witness, kind);
    assert!(
        report.valid,
        "solver witness {} is not a {kind}-code: {report:?}",
        r.witness
    );
    Ok(r)
}

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Minimum X-code by scanning subsets in order of size. Independent of the
/// hypergraph machinery.
pub fn brute_force_gamma(g: &Graph, kind: CodeKind) -> Result<GammaResult> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let nb: Vec<u32> = (0..n)
        .map(|v| g.nbrs(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if !mask_is_code(&nb, full, kind) {
        return Err(Error::Inadmissible {
            kind,
            reason: g.admissibility(kind).reason(),
        });
    }
    let mut nodes = 0u64;
    for size in 0..=n as u32 {
        // Gosper's hack over all masks with `size` bits.
        let mut mask: u32 = if size == 0 { 0 } else { (1u32 << size) - 1 };
        loop {
            nodes += 1;
            if mask_is_code(&nb, mask, kind) {
                let witness = VertexSet::from_iter_n(n, (0..n).filter(|&v| mask >> v & 1 == 1));
                debug_assert!(is_code(g, &witness, kind));
                return Ok(GammaResult {
                    kind,
                    value: size as usize,
                    witness,
                    nodes_explored: nodes,
                });
            }
            if size == 0 {
                break;
            }
            let low = mask & mask.wrapping_neg();
            let ripple = mask.wrapping_add(low);
            if ripple == 0 || ripple > full {
                break;
            }
            let next = ripple | (((mask ^ ripple) >> 2) / low);
            if next > full {
                break;
            }
            mask = next;
        }
    }
    unreachable!("the full vertex set was checked to be a code")
}

/// Definition-level check on bitmasks (`n <= 32`).
fn mask_is_code(nb: &[u32], c: u32, kind: CodeKind) -> bool {
    let n = nb.len();
    let closed_dom = kind.domination() == Domination::Closed;
    for v in 0..n {
        let t = nb[v] & c | if closed_dom { c & 1 << v } else { 0 };
        if t == 0 {
            return false;
        }
    }
    let sep = kind.separation();
    let tr: Vec<u32> = (0..n)
        .map(|v| match sep {
            Separation::ClosedSeparating => (nb[v] | 1 << v) & c,
            _ => nb[v] & c,
        })
        .collect();
    for u in 0..n {
        if sep == Separation::Locating && c >> u & 1 == 1 {
            continue;
        }
        for v in u + 1..n {
            if sep == Separation::Locating && c >> v & 1 == 1 {
                continue;
            }
            if tr[u] == tr[v] {
                return false;
            }
        }
    }
    true
}

/// Vertices whose open neighbourhood misses `c`.
pub fn open_undominated(g: &Graph, c: &VertexSet) -> Vec<usize> {
    (0..g.n()).filter(|&v| !g.nbrs(v).intersects(c)).collect()
}

/// Local test for OD-codes: dominating, at most one vertex with empty open
/// trace, and open-separating every pair at distance at most two.
pub fn is_od_code_locally(g: &Graph, c: &VertexSet) -> bool {
    let n = g.n();
    let dominating = (0..n).all(|v| c.contains(v) || g.nbrs(v).intersects(c));
    if !dominating || open_undominated(g, c).len() > 1 {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            let close = g.has_edge(u, v) || g.nbrs(u).intersects(g.nbrs(v));
            if close && !g.delta_open(u, v).unwrap().intersects(c) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: &'static str,
    pub status: RelationStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// Code numbers of every admissible kind.
    pub gammas: BTreeMap<CodeKind, usize>,
    pub relations: Vec<Relation>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.status != RelationStatus::Fail)
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Computes every admissible code number and checks the known relations.
pub fn check_relations(g: &Graph) -> Result<RelationReport> {
    g.require_admissible(CodeKind::Od)?;
    let mut gammas = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for kind in CodeKind::ALL {
        if g.is_admissible(kind) {
            let r = gamma(g, kind)?;
            gammas.insert(kind, r.value);
            witnesses.insert(kind, r.witness);
        }
    }
    let od = gammas[&CodeKind::Od];
    let n = g.n();
    let isolated = g.isolated_vertices();
    let mut relations = Vec::new();
    let mut push = |name, ok: Option<bool>, detail: String| {
        let status = match ok {
            None => RelationStatus::NotApplicable,
            Some(true) => RelationStatus::Pass,
            Some(false) => RelationStatus::Fail,
        };
        relations.push(Relation { name, status, detail });
    };

    match gammas.get(&CodeKind::Otd) {
        Some(&otd) => push(
            "otd-1 <= od <= otd",
            Some(otd <= od + 1 && od <= otd),
            format!("OD={od}, OTD={otd}"),
        ),
        None => push("otd-1 <= od <= otd", None, "graph has an isolated vertex".into()),
    }

    if isolated.len() == 1 {
        let rest = VertexSet::from_iter_n(n, (0..n).filter(|&v| v != isolated[0]));
        let g2 = g.induced(&rest);
        let otd2 = gamma(&g2, CodeKind::Otd)?.value;
        push(
            "od = otd(G - K1) + 1",
            Some(od == otd2 + 1),
            format!("OD={od}, OTD of the rest={otd2}"),
        );
    } else {
        push("od = otd(G - K1) + 1", None, "graph has no isolated vertex".into());
    }

    let ld = gammas[&CodeKind::Ld];
    push("ld <= od", Some(ld <= od), format!("LD={ld}, OD={od}"));

    match gammas.get(&CodeKind::Ltd) {
        Some(&ltd) => push("ltd-1 <= od", Some(ltd <= od + 1), format!("LTD={ltd}, OD={od}")),
        None => push("ltd-1 <= od", None, "graph has an isolated vertex".into()),
    }

    if isolated.is_empty() && n >= 2 {
        let lo = ceil_log2(n);
        push(
            "ceil(log2 n) <= od <= n-1",
            Some(lo <= od && od < n),
            format!("{lo} <= {od} <= {}", n - 1),
        );
    } else {
        push("ceil(log2 n) <= od <= n-1", None, "needs n >= 2 and no isolated vertex".into());
    }

    let bad = open_undominated(g, &witnesses[&CodeKind::Od]);
    push(
        "od witness has <= 1 open-undominated vertex",
        Some(bad.len() <= 1),
        format!("{} open-undominated", bad.len()),
    );

    Ok(RelationReport { gammas, relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec, NamedGraph};

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_iter_n(n, xs.iter().copied())
    }

    fn named(name: NamedGraph) -> Graph {
        generate(&FamilySpec::Named { name }).unwrap()
    }

    #[test]
    fn p4_codes() {
        let g = named(NamedGraph::P4);
        assert!(verify(&g, &set(4, &[0, 1, 3]), CodeKind::Od).valid);
        let r = verify(&g, &set(4, &[]), CodeKind::Od);
        assert_eq!(r.undominated, vec![0, 1, 2, 3]);
        assert!(!r.valid);
        assert_eq!(brute_force_gamma(&g, CodeKind::Ltd).unwrap().value, 2);
    }

    #[test]
    fn gem_code_from_figure() {
        // path 0-1-2-3 with apex 4: {0,1,3}
        assert!(verify(&named(NamedGraph::Gem), &set(5, &[0, 1, 3]), CodeKind::Od).valid);
    }

    #[test]
    fn k2_values() {
        let k2 = generate(&FamilySpec::Clique { n: 2 }).unwrap();
        assert_eq!(brute_force_gamma(&k2, CodeKind::Od).unwrap().value, 1);
        assert_eq!(gamma(&k2, CodeKind::Od).unwrap().value, 1);
        assert_eq!(gamma(&k2, CodeKind::Otd).unwrap().value, 2);
    }

    #[test]
    fn inadmissible_graph_errors() {
        let g = Graph::empty(2);
        assert!(matches!(gamma(&g, CodeKind::Od), Err(Error::Inadmissible { .. })));
        assert!(matches!(brute_force_gamma(&g, CodeKind::Od), Err(Error::Inadmissible { .. })));
        let big = Graph::empty(21);
        assert!(matches!(brute_force_gamma(&big, CodeKind::Ld), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn violation_lists_are_capped() {
        let g = Graph::empty(20);
        let r = verify(&g, &VertexSet::empty(20), CodeKind::Otd);
        assert_eq!(r.undominated.len() + r.unseparated.len(), MAX_VIOLATIONS);
        assert!(r.truncated);
    }

    #[test]
    fn relation_examples() {
        let b3 = generate(&FamilySpec::HalfGraph { k: 3 }).unwrap().disjoint_union(&Graph::empty(1));
        let r = check_relations(&b3).unwrap();
        assert_eq!(r.gammas[&CodeKind::Od], 7);
        assert!(r.all_pass());
        let fan = generate(&FamilySpec::Fan { k: 2 }).unwrap();
        let r = check_relations(&fan).unwrap();
        assert_eq!((r.gammas[&CodeKind::Od], r.gammas[&CodeKind::Otd]), (3, 4));
        let net = named(NamedGraph::Net);
        let r = check_relations(&net).unwrap();
        assert_eq!((r.gammas[&CodeKind::Od], r.gammas[&CodeKind::Otd]), (3, 3));
        assert!(r.all_pass());
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(
            (1..=9).map(ceil_log2).collect::<Vec<_>>(),
            vec![0, 1, 2, 2, 3, 3, 3, 3, 4]
        );
    }
}
