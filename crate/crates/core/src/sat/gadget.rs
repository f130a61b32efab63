use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LsatInstance, Lit};
use crate::codes::verify;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::kind::CodeKind;
use crate::vset::VertexSet;

/// Role of a gadget vertex; indices are 0-based variable or clause numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "role", content = "index")]
pub enum Role {
    W1(usize),
    W2(usize),
    V1(usize),
    V2(usize),
    V3(usize),
    U1(usize),
    U2(usize),
    U3(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::W1(x) => write!(f, "w1_x{}", x + 1),
            Role::W2(x) => write!(f, "w2_x{}", x + 1),
            Role::V1(x) => write!(f, "v1_x{}", x + 1),
            Role::V2(x) => write!(f, "v2_x{}", x + 1),
            Role::V3(x) => write!(f, "v3_x{}", x + 1),
            Role::U1(c) => write!(f, "u1_c{}", c + 1),
            Role::U2(c) => write!(f, "u2_c{}", c + 1),
            Role::U3(c) => write!(f, "u3_c{}", c + 1),
        }
    }
}

/// The reduction graph together with the role of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub index: BTreeMap<Role, usize>,
    pub instance: LsatInstance,
}

impl GadgetGraph {
    pub fn n_vars(&self) -> usize {
        self.instance.n_vars
    }

    pub fn n_clauses(&self) -> usize {
        self.instance.m()
    }

    pub fn vertex(&self, role: Role) -> Option<usize> {
        self.index.get(&role).copied()
    }

    /// `3n + 2m - 1`: the OD-number exactly when the instance is satisfiable.
    pub fn od_target(&self) -> usize {
        3 * self.n_vars() + 2 * self.n_clauses() - 1
    }

    /// `3n + 2m`: the OTD-number exactly when the instance is satisfiable.
    pub fn otd_target(&self) -> usize {
        3 * self.n_vars() + 2 * self.n_clauses()
    }

    /// Vertices of all `v`- and `u`-triples.
    pub fn triples(&self) -> VertexSet {
        VertexSet::from_iter_n(
            self.graph.n(),
            self.roles
                .iter()
                .enumerate()
                .filter(|(_, r)| !matches!(r, Role::W1(_) | Role::W2(_)))
                .map(|(v, _)| v),
        )
    }

    /// The bipartition used in the structural argument:
    /// `{u1, u3, v1, v3}` against `{u2, w1, w2, v2}`.
    pub fn role_side(&self, v: usize) -> bool {
        matches!(self.roles[v], Role::U2(_) | Role::W1(_) | Role::W2(_) | Role::V2(_))
    }
}

/// Builds the reduction graph of a saturated instance.
///
/// Per variable `x`: a path `v1 - v2 - v3`, plus `w1` (if `x` occurs) and `w2`
/// (if `-x` occurs), both adjacent to `v1`. Per clause `c`: a path
/// `u1 - u2 - u3`, with `u1` adjacent to `w1` of every positive and `w2` of
/// every negative literal of `c`.
pub fn build_gadget(psi: &LsatInstance) -> Result<GadgetGraph> {
    for (lit, count) in psi.occurrences() {
        if count != 2 {
            return Err(Error::Unsaturated {
                literal: lit.to_string(),
                count,
            });
        }
    }
    // A variable that never occurs would make v1 and v3 open twins.
    if let Some(x) = (0..psi.n_vars).find(|&x| !psi.occurs(Lit::pos(x)) && !psi.occurs(Lit::neg(x))) {
        return Err(Error::UnusedVariable(x + 1));
    }
    let mut roles = Vec::new();
    for x in 0..psi.n_vars {
        roles.extend([Role::V1(x), Role::V2(x), Role::V3(x)]);
        if psi.occurs(Lit::pos(x)) {
            roles.push(Role::W1(x));
        }
        if psi.occurs(Lit::neg(x)) {
            roles.push(Role::W2(x));
        }
    }
    for c in 0..psi.m() {
        roles.extend([Role::U1(c), Role::U2(c), Role::U3(c)]);
    }
    let index: BTreeMap<Role, usize> = roles.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut b = GraphBuilder::new(roles.len());
    let mut edge = |a: Role, c: Role| b.add_edge(index[&a], index[&c]).map(|_| ());
    for x in 0..psi.n_vars {
        edge(Role::V1(x), Role::V2(x))?;
        edge(Role::V2(x), Role::V3(x))?;
        for w in [Role::W1(x), Role::W2(x)] {
            if index.contains_key(&w) {
                edge(Role::V1(x), w)?;
            }
        }
    }
    for (c, clause) in psi.clauses.iter().enumerate() {
        edge(Role::U1(c), Role::U2(c))?;
        edge(Role::U2(c), Role::U3(c))?;
        for l in clause {
            let w = if l.positive { Role::W1(l.var) } else { Role::W2(l.var) };
            edge(Role::U1(c), w)?;
        }
    }
    for (v, r) in roles.iter().enumerate() {
        b.label(v, r.to_string())?;
    }
    Ok(GadgetGraph {
        graph: b.build(),
        roles,
        index,
        instance: psi.clone(),
    })
}

/// The code built from a satisfying assignment, leaving out `v1` of the
/// lowest-index variable for OD.
pub fn assignment_to_code(gg: &GadgetGraph, assignment: &[bool], kind: CodeKind) -> Result<VertexSet> {
    assignment_to_code_with_anchor(gg, assignment, kind, 0)
}

/// As [`assignment_to_code`] with an explicit anchor variable `x0`.
///
/// OD: `v1` of every variable except `x0`, `v2` of every variable, `u1` and
/// `u2` of every clause, and one `w` per variable (the only one present, or
/// the one of the true literal). OTD adds `v1` of `x0`.
pub fn assignment_to_code_with_anchor(
    gg: &GadgetGraph,
    assignment: &[bool],
    kind: CodeKind,
    x0: usize,
) -> Result<VertexSet> {
    if !matches!(kind, CodeKind::Od | CodeKind::Otd) {
        return Err(Error::Inadmissible {
            kind,
            reason: "the reduction only yields OD and OTD codes".into(),
        });
    }
    let psi = &gg.instance;
    if assignment.len() != psi.n_vars || x0 >= psi.n_vars {
        return Err(Error::VertexOutOfRange {
            vertex: x0.max(assignment.len()),
            n: psi.n_vars,
        });
    }
    if let Some(c) = psi.first_unsatisfied(assignment) {
        return Err(Error::UnsatisfiedClause(c + 1));
    }
    let mut s = VertexSet::empty(gg.graph.n());
    let at = |r: Role| gg.index[&r];
    for x in 0..psi.n_vars {
        if x != x0 || kind == CodeKind::Otd {
            s.insert(at(Role::V1(x)));
        }
        s.insert(at(Role::V2(x)));
        let w = match (gg.vertex(Role::W1(x)), gg.vertex(Role::W2(x))) {
            (Some(w1), Some(w2)) => {
                if assignment[x] {
                    w1
                } else {
                    w2
                }
            }
            (Some(w), None) | (None, Some(w)) => w,
            (None, None) => unreachable!("every variable occurs"),
        };
        s.insert(w);
    }
    for c in 0..psi.m() {
        s.insert(at(Role::U1(c)));
        s.insert(at(Role::U2(c)));
    }
    Ok(s)
}

/// Reads an assignment off an open-separating set holding exactly one `w`
/// vertex per variable: `x` is true iff `w1` of `x` is in the set.
pub fn code_to_assignment(gg: &GadgetGraph, s: &VertexSet) -> Result<Vec<bool>> {
    let psi = &gg.instance;
    let mut a = vec![false; psi.n_vars];
    for (x, slot) in a.iter_mut().enumerate() {
        let w1 = gg.vertex(Role::W1(x)).filter(|&v| s.contains(v));
        let w2 = gg.vertex(Role::W2(x)).filter(|&v| s.contains(v));
        match (w1, w2) {
            (Some(_), None) => *slot = true,
            (None, Some(_)) => *slot = false,
            _ => {
                return Err(Error::AmbiguousVariable {
                    var: x + 1,
                    count: w1.is_some() as usize + w2.is_some() as usize,
                })
            }
        }
    }
    // Open separation is the precondition; domination is not needed.
    if let Some(p) = verify(&gg.graph, s, CodeKind::Od).unseparated.first() {
        return Err(Error::NotOpenSeparating { u: p.u, v: p.v });
    }
    if let Some(c) = psi.first_unsatisfied(&a) {
        return Err(Error::UnsatisfiedClause(c + 1));
    }
    Ok(a)
}

/// Incidence graph between clauses (vertices `0..m`) and occurring literals
/// (after the clauses, in literal order).
pub fn auxiliary_graph(psi: &LsatInstance) -> Result<Graph> {
    if !psi.is_saturated() {
        let (lit, count) = psi
            .occurrences()
            .into_iter()
            .find(|&(_, c)| c != 2)
            .expect("unsaturated instance has a literal with count != 2");
        return Err(Error::Unsaturated {
            literal: lit.to_string(),
            count,
        });
    }
    let lits: Vec<Lit> = psi.occurrences().into_keys().collect();
    let m = psi.m();
    let mut b = GraphBuilder::new(m + lits.len());
    for (c, clause) in psi.clauses.iter().enumerate() {
        b.label(c, format!("c{}", c + 1))?;
        for l in clause {
            let i = lits.binary_search(l).expect("occurring literal");
            b.add_edge(c, m + i)?;
        }
    }
    for (i, l) in lits.iter().enumerate() {
        b.label(m + i, l.to_string())?;
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{gamma, is_code};
    use crate::sat::{saturate, unsatisfiable_example};

    fn small() -> LsatInstance {
        // (x1 ∨ x2)(x1)(x2): saturated, satisfiable, -x1 and -x2 absent.
        LsatInstance::new(
            2,
            vec![vec![Lit::pos(0), Lit::pos(1)], vec![Lit::pos(0)], vec![Lit::pos(1)]],
        )
        .unwrap()
    }

    #[test]
    fn structure_of_small_gadget() {
        let gg = build_gadget(&small()).unwrap();
        let g = &gg.graph;
        assert_eq!(g.n(), 3 * 3 + 2 * (3 + 1));
        assert!(g.is_bipartite());
        assert!(g.max_degree() <= 4);
        assert!(g.girth().is_none_or(|x| x >= 6));
        assert!(gg.vertex(Role::W2(0)).is_none());
        assert_eq!(g.degree(gg.index[&Role::V1(0)]), 2);
        for (u, v) in g.edges() {
            assert_ne!(gg.role_side(u), gg.role_side(v));
        }
    }

    #[test]
    fn codes_from_assignment_are_valid_and_tight() {
        let gg = build_gadget(&small()).unwrap();
        let a = vec![true, true];
        let od = assignment_to_code(&gg, &a, CodeKind::Od).unwrap();
        let otd = assignment_to_code(&gg, &a, CodeKind::Otd).unwrap();
        assert_eq!(od.len(), gg.od_target());
        assert_eq!(otd.len(), od.len() + 1);
        assert!(is_code(&gg.graph, &od, CodeKind::Od));
        assert!(is_code(&gg.graph, &otd, CodeKind::Otd));
        assert_eq!(code_to_assignment(&gg, &od).unwrap(), a);
        assert_eq!(gamma(&gg.graph, CodeKind::Od).unwrap().value, gg.od_target());
        assert!(assignment_to_code(&gg, &[false, true], CodeKind::Od).is_err());
    }

    #[test]
    fn missing_w_vertices_are_rejected() {
        let gg = build_gadget(&small()).unwrap();
        let s = VertexSet::empty(gg.graph.n());
        assert!(matches!(code_to_assignment(&gg, &s), Err(Error::AmbiguousVariable { .. })));
    }

    #[test]
    fn rejects_unsaturated_and_unused() {
        let psi = LsatInstance::new(1, vec![vec![Lit::pos(0)]]).unwrap();
        assert!(matches!(build_gadget(&psi), Err(Error::Unsaturated { .. })));
        assert!(build_gadget(&saturate(&psi)).is_ok());
        let unused = LsatInstance::new(3, small().clauses).unwrap();
        assert_eq!(build_gadget(&unused), Err(Error::UnusedVariable(3)));
    }

    #[test]
    fn unsatisfiable_example_misses_the_target() {
        let gg = build_gadget(&unsatisfiable_example()).unwrap();
        assert!(gamma(&gg.graph, CodeKind::Od).unwrap().value > gg.od_target());
        assert!(gamma(&gg.graph, CodeKind::Otd).unwrap().value > gg.otd_target());
    }

    #[test]
    fn auxiliary_graph_degrees() {
        let psi = unsatisfiable_example();
        let h = auxiliary_graph(&psi).unwrap();
        assert_eq!(h.n(), 6 + 4);
        for v in 6..10 {
            assert_eq!(h.degree(v), 2);
        }
        assert!(h.max_degree() <= 3);
        assert!(h.is_bipartite());
    }
}
