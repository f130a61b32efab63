//! Result tables for the reproduction suites: small-graph values, family
//! formulas, clutter shapes, random relation checks, the SAT reduction,
//! q-roses, polyhedral systems and the brute-force oracle comparison.
//!
//! Every row carries its own verdict so callers can print or serialize them.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clutter::{q_rose, Clutter};
use crate::codes::{brute_force_gamma, ceil_log2, check_relations, gamma, gamma_cover, open_undominated, verify};
use crate::cover::{min_cover, DEFAULT_CAP};
use crate::error::Result;
use crate::families::{
    corpus, generate, partitions, predicted_gamma, random_open_twin_free, FamilySpec, NamedGraph,
};
use crate::graph::Graph;
use crate::kind::CodeKind;
use crate::polyhedra::{check_tightness, check_validity, integer_hull_equiv, od_polyhedron_system, FamilyHint};
use crate::sat::{
    assignment_to_code, auxiliary_graph, brute_force_sat, build_gadget, code_to_assignment, enumerate_sl_sat,
    LsatInstance,
};

pub const DEFAULT_SEED: u64 = 20240229;

#[derive(Clone, Debug, Serialize)]
pub struct ValueRow {
    pub graph: String,
    pub n: usize,
    pub kind: CodeKind,
    pub expected: usize,
    pub solver: usize,
    /// Exhaustive value, when the graph is small enough.
    pub brute_force: Option<usize>,
    pub pass: bool,
}

fn value_row(graph: String, g: &Graph, kind: CodeKind, expected: usize, brute: bool) -> Result<ValueRow> {
    let solver = gamma(g, kind)?.value;
    let brute_force = if brute { Some(brute_force_gamma(g, kind)?.value) } else { None };
    let pass = solver == expected && brute_force.is_none_or(|b| b == expected);
    Ok(ValueRow {
        graph,
        n: g.n(),
        kind,
        expected,
        solver,
        brute_force,
        pass,
    })
}

/// The six small graphs with their OD value and one other code number.
pub const SMALL_GRAPHS: [NamedGraph; 6] = [
    NamedGraph::Gem,
    NamedGraph::GemComplement,
    NamedGraph::Bull,
    NamedGraph::Bow,
    NamedGraph::TwoP2,
    NamedGraph::P4,
];

pub fn small_graph_rows() -> Result<Vec<ValueRow>> {
    let mut rows = Vec::new();
    for name in SMALL_GRAPHS {
        let spec = FamilySpec::Named { name };
        let g = generate(&spec)?;
        for p in predicted_gamma(&spec) {
            rows.push(value_row(name.name().to_string(), &g, p.kind, p.value, true)?);
        }
    }
    Ok(rows)
}

/// Family instances with a closed-form OD/OTD value and at most `max_n`
/// vertices; `max_k` additionally bounds the family parameter.
pub fn formula_instances(max_n: usize, max_k: usize) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 2..=max_n.min(max_k.max(2)) {
        specs.push(FamilySpec::Clique { n });
    }
    for k in 1..=max_k {
        specs.push(FamilySpec::Matching { k });
        specs.push(FamilySpec::HalfGraph { k });
        if k >= 2 {
            specs.push(FamilySpec::Fan { k });
        }
        if k >= 3 {
            specs.push(FamilySpec::DoubleStar { k });
            specs.push(FamilySpec::ThinSpider { k });
            specs.push(FamilySpec::ThickSpider { k });
            specs.push(FamilySpec::AlmostCompleteThinSun { l: k });
        }
        if k >= 4 {
            specs.push(FamilySpec::ExtendedThinSpider { k });
        }
        if k >= 5 {
            specs.push(FamilySpec::Sunlet { k });
        }
    }
    for sizes in partitions(max_n, 2, 2) {
        specs.push(FamilySpec::UnionOfCliques { sizes });
    }
    for sizes in partitions(max_n.saturating_sub(1), 1, 2) {
        if sizes.iter().filter(|&&s| s == 1).count() <= 1 {
            specs.push(FamilySpec::CliqueStar { sizes });
        }
    }
    specs.retain(|s| s.order() <= max_n);
    specs
}

pub fn family_rows(max_n: usize, max_k: usize) -> Result<Vec<ValueRow>> {
    let mut rows = Vec::new();
    for spec in formula_instances(max_n, max_k) {
        let g = generate(&spec)?;
        for p in predicted_gamma(&spec) {
            rows.push(value_row(spec.to_string(), &g, p.kind, p.value, false)?);
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn edge_set(c: &Clutter) -> BTreeSet<Vec<usize>> {
    c.edge_lists().into_iter().collect()
}

fn labelled_edges(g: &Graph, c: &Clutter) -> BTreeSet<Vec<String>> {
    c.edges
        .iter()
        .map(|e| {
            let mut l: Vec<String> = e.iter().map(|v| g.label(v).unwrap_or("?").to_string()).collect();
            l.sort();
            l
        })
        .collect()
}

/// Shapes of the OD/OTD clutters of cliques, spiders and half-graphs for `k` in `3..=max_k`.
pub fn clutter_shape_rows(max_k: usize) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for k in 3..=max_k {
        let g = generate(&FamilySpec::Clique { n: k })?;
        let c = Clutter::of_graph(&g, CodeKind::Od)?;
        let ok = edge_set(&c) == edge_set(&q_rose(k, 2)?) && c.v0.is_empty();
        rows.push(check(format!("C_OD(K{k}) = R^2_{k}"), ok, format!("{} edges", c.edges.len())));

        let g = generate(&FamilySpec::HalfGraph { k })?;
        let c = Clutter::of_graph(&g, CodeKind::Od)?;
        let mut expected: BTreeSet<Vec<String>> = (2..=k)
            .map(|i| vec![format!("u_{i}")])
            .chain((1..k).map(|i| vec![format!("w_{i}")]))
            .collect();
        expected.insert(vec!["u_1".into(), format!("w_{k}")]);
        rows.push(check(
            format!("C_OD(B{k}) = {} singletons + {{u1,wk}}", 2 * k - 2),
            labelled_edges(&g, &c) == expected,
            format!("{} edges", c.edges.len()),
        ));
        let c = Clutter::of_graph(&g, CodeKind::Otd)?;
        let ok = c.edges.len() == 2 * k && c.edges.iter().all(|e| e.len() == 1);
        rows.push(check(format!("C_OTD(B{k}) = {} singletons", 2 * k), ok, format!("{} edges", c.edges.len())));

        if k >= 4 {
            // Thin spider: the clutter is the graph itself.
            let g = generate(&FamilySpec::ThinSpider { k })?;
            let c = Clutter::of_graph(&g, CodeKind::Od)?;
            let graph_edges: BTreeSet<Vec<usize>> = g.edges().into_iter().map(|(u, v)| vec![u, v]).collect();
            rows.push(check(
                format!("C_OD(thin spider k={k}) = graph"),
                edge_set(&c) == graph_edges,
                format!("{} edges", c.edges.len()),
            ));

            let g = generate(&FamilySpec::ThickSpider { k })?;
            let c = Clutter::of_graph(&g, CodeKind::Od)?;
            let s: Vec<usize> = (1..=k).map(|i| g.vertex_by_label(&format!("s_{i}")).unwrap()).collect();
            let q: Vec<usize> = (1..=k).map(|i| g.vertex_by_label(&format!("q_{i}")).unwrap()).collect();
            let mut expected = BTreeSet::new();
            for e in q_rose(k, k - 1)?.edge_lists() {
                let mut m: Vec<usize> = e.iter().map(|&i| s[i]).collect();
                m.sort();
                expected.insert(m);
            }
            for e in q_rose(k, 2)?.edge_lists() {
                let mut m: Vec<usize> = e.iter().map(|&i| q[i]).collect();
                m.sort();
                expected.insert(m);
            }
            rows.push(check(
                format!("C_OD(thick spider k={k}) = R^{}_{k} + R^2_{k}", k - 1),
                edge_set(&c) == expected,
                format!("{} edges", c.edges.len()),
            ));

            let g = generate(&FamilySpec::ExtendedThinSpider { k })?;
            let c = Clutter::of_graph(&g, CodeKind::Od)?;
            let sk = g.vertex_by_label(&format!("s_{k}")).unwrap();
            rows.push(check(
                format!("C_OD(extended thin spider k={k}) has {{s_k}}"),
                c.f1.contains(sk),
                format!("F1 = {}", c.f1),
            ));
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationRow {
    pub index: usize,
    pub n: usize,
    pub edges: usize,
    pub od: usize,
    pub otd: usize,
    pub ld: usize,
    pub ltd: usize,
    pub optima: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Bounds and relations on `count` seeded random OD-admissible graphs without
/// isolated vertices.
pub fn relation_rows(count: usize, max_n: usize, seed: u64) -> Result<Vec<RelationRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for index in 0..count {
        let n = 3 + index % (max_n - 2);
        let p = [0.3, 0.45, 0.6][index % 3];
        let g = random_open_twin_free(&mut rng, n, p, false);
        let rep = check_relations(&g)?;
        let mut failures: Vec<String> = rep
            .relations
            .iter()
            .filter(|r| r.status == crate::codes::RelationStatus::Fail)
            .map(|r| format!("{}: {}", r.name, r.detail))
            .collect();
        let get = |k| rep.gammas.get(&k).copied();
        let od = get(CodeKind::Od).expect("OD admissible");
        let otd = get(CodeKind::Otd).expect("no isolated vertices");
        let ld = get(CodeKind::Ld).expect("LD always admissible");
        let ltd = get(CodeKind::Ltd).expect("no isolated vertices");
        if !(ceil_log2(n) <= od && od < n) {
            failures.push(format!("log2 bound: od={od}, n={n}"));
        }
        if !(otd == od || otd == od + 1) {
            failures.push(format!("otd-od: {otd}-{od}"));
        }
        if ld > od {
            failures.push(format!("ld > od: {ld} > {od}"));
        }
        if ltd > od + 1 {
            failures.push(format!("ltd-1 > od: {ltd} > {od}+1"));
        }
        let all = gamma_cover(&g, CodeKind::Od, true, DEFAULT_CAP)?;
        let optima = all.all_optima.unwrap_or_default();
        for c in &optima {
            if open_undominated(&g, c).len() > 1 {
                failures.push(format!("optimum {c} leaves several vertices open-undominated"));
            }
        }
        rows.push(RelationRow {
            index,
            n,
            edges: g.edge_count(),
            od,
            otd,
            ld,
            ltd,
            optima: optima.len(),
            pass: failures.is_empty(),
            failures,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct SatRow {
    pub formula: String,
    pub n_vars: usize,
    pub n_clauses: usize,
    pub order: usize,
    pub satisfiable: bool,
    pub od: usize,
    pub od_target: usize,
    pub otd: usize,
    pub otd_target: usize,
    pub optima_checked: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Runs every check of the reduction on one saturated instance.
pub fn sat_roundtrip(psi: &LsatInstance) -> Result<SatRow> {
    let gg = build_gadget(psi)?;
    let g = &gg.graph;
    let mut failures = Vec::new();
    let satisfying = brute_force_sat(psi)?;
    let od = gamma_cover(g, CodeKind::Od, true, DEFAULT_CAP)?;
    let otd = gamma(g, CodeKind::Otd)?.value;
    let (od_target, otd_target) = (gg.od_target(), gg.otd_target());
    let sat = satisfying.is_some();
    if sat != (od.value == od_target) {
        failures.push(format!("satisfiable={sat} but od={} (target {od_target})", od.value));
    }
    if sat != (otd == otd_target) {
        failures.push(format!("satisfiable={sat} but otd={otd} (target {otd_target})"));
    }
    if od.value < od_target || otd < otd_target {
        failures.push("code number below target".into());
    }
    let mut optima_checked = 0;
    if let Some(a) = &satisfying {
        for (kind, target) in [(CodeKind::Od, od_target), (CodeKind::Otd, otd_target)] {
            let s = assignment_to_code(&gg, a, kind)?;
            if s.len() != target || !verify(g, &s, kind).valid {
                failures.push(format!("{kind} code from assignment is not a code of size {target}"));
            }
        }
        for s in od.all_optima.iter().flatten() {
            optima_checked += 1;
            match code_to_assignment(&gg, s) {
                Ok(b) if psi.satisfies(&b) => {}
                Ok(_) => failures.push(format!("optimum {s} decodes to a non-satisfying assignment")),
                Err(e) => failures.push(format!("optimum {s}: {e}")),
            }
        }
        if od.truncated {
            failures.push("optimum enumeration truncated".into());
        }
    }
    if !g.is_bipartite() || g.max_degree() > 4 || g.girth().is_some_and(|l| l < 6) {
        failures.push(format!(
            "gadget: bipartite={}, max degree {}, girth {:?}",
            g.is_bipartite(),
            g.max_degree(),
            g.girth()
        ));
    }
    let aux = auxiliary_graph(psi)?;
    if aux.max_degree() > 3 || aux.girth().is_some_and(|l| l < 6) {
        failures.push(format!("auxiliary: max degree {}, girth {:?}", aux.max_degree(), aux.girth()));
    }
    Ok(SatRow {
        formula: psi.to_text().lines().skip(1).collect::<Vec<_>>().join(" "),
        n_vars: psi.n_vars,
        n_clauses: psi.m(),
        order: g.n(),
        satisfiable: sat,
        od: od.value,
        od_target,
        otd,
        otd_target,
        optima_checked,
        pass: failures.is_empty(),
        failures,
    })
}

pub fn sat_rows(max_vars: usize, max_clauses: usize) -> Result<Vec<SatRow>> {
    enumerate_sl_sat(max_vars, max_clauses).iter().map(sat_roundtrip).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RoseRow {
    pub n: usize,
    pub q: usize,
    pub tau: usize,
    pub expected: usize,
    pub pass: bool,
}

pub fn qrose_rows(max_n: usize) -> Result<Vec<RoseRow>> {
    let mut rows = Vec::new();
    for n in 3..=max_n {
        for q in 2..n {
            let tau = min_cover(&q_rose(n, q)?, false, DEFAULT_CAP).value;
            rows.push(RoseRow {
                n,
                q,
                tau,
                expected: n - q + 1,
                pass: tau == n - q + 1,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyRow {
    pub family: String,
    pub n: usize,
    pub equalities: usize,
    pub inequalities: usize,
    pub valid: bool,
    pub tight: bool,
    pub hull: bool,
    pub forced_match: bool,
    pub pass: bool,
}

/// The instances whose listed systems are checked by default.
pub fn polyhedron_instances() -> Vec<(FamilySpec, FamilyHint)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push((FamilySpec::Clique { n }, FamilyHint::Clique));
    }
    for k in 1..=3 {
        out.push((FamilySpec::Matching { k }, FamilyHint::Matching));
    }
    for k in 2..=5 {
        out.push((FamilySpec::HalfGraph { k }, FamilyHint::HalfGraph));
    }
    out.push((FamilySpec::Fan { k: 3 }, FamilyHint::Fan));
    out.push((FamilySpec::ThinSpider { k: 4 }, FamilyHint::ThinSpider));
    out.push((FamilySpec::ThickSpider { k: 4 }, FamilyHint::ThickSpider));
    out.push((FamilySpec::ExtendedThinSpider { k: 4 }, FamilyHint::ExtendedThinSpider));
    out.push((FamilySpec::Sunlet { k: 5 }, FamilyHint::Sunlet));
    out.push((FamilySpec::AlmostCompleteThinSun { l: 3 }, FamilyHint::AlmostCompleteThinSun));
    out
}

pub fn polyhedron_row(spec: &FamilySpec, hint: FamilyHint) -> Result<PolyRow> {
    let g = generate(spec)?;
    let sys = od_polyhedron_system(&g, hint)?;
    let c = Clutter::of_graph(&g, CodeKind::Od)?;
    let valid = check_validity(&sys, &c)?.valid;
    let tight = check_tightness(&sys, &c)?.all_tight;
    let hull = integer_hull_equiv(&sys, &c, 16)?.equivalent;
    let forced_match = sys.equalities == c.f1.to_vec();
    Ok(PolyRow {
        family: spec.to_string(),
        n: g.n(),
        equalities: sys.equalities.len(),
        inequalities: sys.inequalities.len(),
        valid,
        tight,
        hull,
        forced_match,
        pass: valid && tight && hull && forced_match,
    })
}

pub fn polyhedron_rows() -> Result<Vec<PolyRow>> {
    polyhedron_instances().iter().map(|(s, h)| polyhedron_row(s, *h)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRow {
    pub graph: String,
    pub n: usize,
    pub kind: CodeKind,
    pub solver: usize,
    pub brute_force: usize,
    pub pass: bool,
}

/// Solver against exhaustive search for every admissible kind on the corpus.
pub fn oracle_rows(max_n: usize, seed: u64) -> Result<Vec<OracleRow>> {
    let mut rows = Vec::new();
    for (name, g) in corpus(max_n, seed) {
        for kind in CodeKind::ALL {
            if !g.is_admissible(kind) {
                continue;
            }
            let solver = gamma(&g, kind)?.value;
            let brute_force = brute_force_gamma(&g, kind)?.value;
            rows.push(OracleRow {
                graph: name.clone(),
                n: g.n(),
                kind,
                solver,
                brute_force,
                pass: solver == brute_force,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_reports_pass() {
        assert!(small_graph_rows().unwrap().iter().all(|r| r.pass));
        assert!(family_rows(10, 5).unwrap().iter().all(|r| r.pass));
        for r in clutter_shape_rows(4).unwrap() {
            assert!(r.pass, "{r:?}");
        }
        assert!(qrose_rows(5).unwrap().iter().all(|r| r.pass));
        assert!(relation_rows(10, 7, 1).unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn sat_rows_on_tiny_instances() {
        let rows = sat_rows(2, 4).unwrap();
        assert!(!rows.is_empty());
        for r in &rows {
            assert!(r.pass, "{r:?}");
        }
    }
}
