use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use odcode::clutter::Clutter;
use odcode::codes::{check_relations, gamma_cover, verify, RelationStatus};
use odcode::cover::{min_cover, DEFAULT_CAP};
use odcode::families::{generate, FamilySpec};
use odcode::io::{parse_graph_auto, write_graph, write_graph_json};
use odcode::polyhedra::{check_tightness, check_validity, integer_hull_equiv, od_polyhedron_system, FamilyHint};
use odcode::report::{self, DEFAULT_SEED};
use odcode::sat::{build_gadget, enumerate_sl_sat, parse_lsat, saturate, LsatInstance};
use odcode::{CodeKind, Graph, VertexSet};

#[derive(Parser)]
#[command(name = "odcode", version, about = "Identification codes in graphs: solvers, reductions and checks")]
struct Cli {
    /// Emit machine-readable JSON (schema 1) instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a graph of a named family in the text graph format.
    Generate {
        #[arg(long)]
        family: String,
        /// Comma-separated `key=value` pairs, e.g. `k=4` or `sizes=2:3:3`.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Print the reduced code clutter of a graph.
    Clutter {
        #[arg(long, default_value = "OD")]
        kind: CodeKind,
        graph: PathBuf,
    },
    /// Minimum code size and an optimal code.
    Gamma {
        #[arg(long, default_value = "OD")]
        kind: CodeKind,
        /// Also list every optimal code (up to --cap).
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        graph: PathBuf,
    },
    /// Check a vertex set against the code conditions. Exit 1 if it fails.
    Verify {
        #[arg(long, default_value = "OD")]
        kind: CodeKind,
        /// Comma-separated vertex indices.
        #[arg(long, allow_hyphen_values = true)]
        code: String,
        graph: PathBuf,
    },
    /// Code numbers of every admissible kind and the relations between them.
    Relations { graph: PathBuf },
    /// Build the gadget graph of an LSAT formula (saturating it first if needed).
    ReduceSat {
        formula: PathBuf,
        #[arg(long)]
        emit_graph: Option<PathBuf>,
        #[arg(long)]
        emit_roles: Option<PathBuf>,
    },
    /// Check the SAT reduction on one formula, or on every enumerated
    /// saturated instance when no formula is given.
    SatRoundtrip {
        formula: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_vars: usize,
        #[arg(long, default_value_t = 6)]
        max_clauses: usize,
    },
    /// Covering number of a clutter given as `{"n": .., "edges": [[..], ..]}`.
    Tau {
        clutter: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print the listed OD-polyhedron system of a family and check it.
    Polyhedron {
        #[arg(long)]
        family: String,
        /// Family parameter (clique order, matching size, k or l).
        #[arg(long)]
        k: Option<usize>,
        /// Use this graph instead of generating one (required for `generic`).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Check::None)]
        check: Check,
    },
    /// Regenerate the result tables. Exit 1 if any row fails.
    PaperReport {
        #[arg(value_enum, default_value_t = Section::All)]
        section: Section,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    None,
    Validity,
    Tightness,
    Hull,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Section {
    All,
    SmallGraphs,
    Families,
    Clutters,
    Relations,
    Sat,
    Qrose,
    Polyhedra,
    Oracle,
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Generate { .. } => "generate",
            Cmd::Clutter { .. } => "clutter",
            Cmd::Gamma { .. } => "gamma",
            Cmd::Verify { .. } => "verify",
            Cmd::Relations { .. } => "relations",
            Cmd::ReduceSat { .. } => "reduce-sat",
            Cmd::SatRoundtrip { .. } => "sat-roundtrip",
            Cmd::Tau { .. } => "tau",
            Cmd::Polyhedron { .. } => "polyhedron",
            Cmd::PaperReport { .. } => "paper-report",
        }
    }
}

enum Failure {
    Lib(odcode::Error),
    Io { path: PathBuf, message: String },
    Usage(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Lib(e) => e.name(),
            Failure::Io { .. } => "io",
            Failure::Usage(_) => "usage",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io { path, message } => format!("{}: {message}", path.display()),
            Failure::Usage(m) => m.clone(),
        }
    }
}

impl From<odcode::Error> for Failure {
    fn from(e: odcode::Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Output, Failure>;

/// What a subcommand produced: text, the JSON body, and whether the result
/// counts as valid/passing.
struct Output {
    text: String,
    json: Value,
    pass: bool,
}

fn ok(text: String, json: Value) -> Outcome {
    Ok(Output { text, json, pass: true })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn write(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(parse_graph_auto(&read(path)?)?)
}

fn load_lsat(path: &Path) -> Result<LsatInstance, Failure> {
    parse_lsat(&read(path)?).map_err(|v| Failure::Lib(v.into()))
}

fn set_json(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(headers.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn verdict(pass: bool) -> String {
    if pass { "PASS" } else { "FAIL" }.to_string()
}

fn cmd_generate(family: &str, params: &str) -> Outcome {
    let spec = FamilySpec::parse(family, params)?;
    let g = generate(&spec)?;
    let mut body: Value = serde_json::from_str(&write_graph_json(&g)).expect("graph json");
    body["family"] = json!(spec.to_string());
    ok(write_graph(&g), body)
}

fn cmd_clutter(kind: CodeKind, path: &Path) -> Outcome {
    let g = load_graph(path)?;
    let c = Clutter::of_graph(&g, kind)?;
    let f2: Vec<&VertexSet> = c.edges.iter().filter(|e| e.len() > 1).collect();
    let mut text = format!(
        "kind {kind}\nn {}\nground {}\nV0 {}\nF1 {}\nF2 {}\n",
        c.n,
        c.ground,
        c.v0,
        c.f1,
        f2.len()
    );
    for e in &f2 {
        let _ = writeln!(text, "{e}");
    }
    let json = json!({
        "kind": kind,
        "n": c.n,
        "ground": set_json(&c.ground),
        "v0": set_json(&c.v0),
        "f1": set_json(&c.f1),
        "f2": f2.iter().map(|e| set_json(e)).collect::<Vec<_>>(),
        "edges": c.edge_lists(),
    });
    ok(text, json)
}

fn cmd_gamma(kind: CodeKind, enumerate: bool, cap: usize, path: &Path) -> Outcome {
    let g = load_graph(path)?;
    let r = gamma_cover(&g, kind, enumerate, cap)?;
    let mut text = format!("{}\nwitness {}\n", r.value, r.witness);
    let labels: Vec<String> = r.witness.iter().filter_map(|v| g.label(v).map(str::to_string)).collect();
    if !labels.is_empty() {
        let _ = writeln!(text, "roles {}", labels.join(" "));
    }
    let mut json = json!({
        "kind": kind,
        "value": r.value,
        "witness": set_json(&r.witness),
        "nodes_explored": r.nodes_explored,
    });
    if let Some(all) = &r.all_optima {
        let _ = writeln!(
            text,
            "optima {}{}",
            all.len(),
            if r.truncated { " (truncated)" } else { "" }
        );
        for s in all {
            let _ = writeln!(text, "{s}");
        }
        json["optima"] = json!(all.iter().map(set_json).collect::<Vec<_>>());
        json["truncated"] = json!(r.truncated);
    }
    ok(text, json)
}

fn parse_code(s: &str, n: usize) -> Result<VertexSet, Failure> {
    let mut out = VertexSet::empty(n);
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part
            .parse()
            .map_err(|_| Failure::Usage(format!("`{part}` is not a vertex index")))?;
        if v >= n {
            return Err(odcode::Error::VertexOutOfRange { vertex: v, n }.into());
        }
        out.insert(v);
    }
    Ok(out)
}

fn cmd_verify(kind: CodeKind, code: &str, path: &Path) -> Outcome {
    let g = load_graph(path)?;
    let c = parse_code(code, g.n())?;
    let r = verify(&g, &c, kind);
    let mut text = format!("{}\n", if r.valid { "valid" } else { "invalid" });
    if !r.undominated.is_empty() {
        let undominated: Vec<String> = r.undominated.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "undominated {}", undominated.join(" "));
    }
    for p in &r.unseparated {
        let _ = writeln!(text, "unseparated {} {} trace {}", p.u, p.v, p.trace);
    }
    if r.truncated {
        let _ = writeln!(text, "(violation list truncated)");
    }
    let json = json!({
        "kind": kind,
        "code": set_json(&c),
        "valid": r.valid,
        "undominated": r.undominated,
        "unseparated": r.unseparated.iter().map(|p| json!({"u": p.u, "v": p.v, "trace": set_json(&p.trace)})).collect::<Vec<_>>(),
        "truncated": r.truncated,
    });
    Ok(Output {
        text,
        json,
        pass: r.valid,
    })
}

fn cmd_relations(path: &Path) -> Outcome {
    let g = load_graph(path)?;
    let rep = check_relations(&g)?;
    let mut text = String::new();
    for kind in CodeKind::ALL {
        let v = rep.gammas.get(&kind).map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(text, "{:<4}{v}", kind.to_string());
    }
    let rows: Vec<Vec<String>> = rep
        .relations
        .iter()
        .map(|r| {
            let status = match r.status {
                RelationStatus::Pass => "PASS",
                RelationStatus::Fail => "FAIL",
                RelationStatus::NotApplicable => "n/a",
            };
            vec![r.name.to_string(), status.to_string(), r.detail.clone()]
        })
        .collect();
    text.push('\n');
    text.push_str(&table(&["relation", "status", "detail"], &rows));
    Ok(Output {
        text,
        json: serde_json::to_value(&rep).expect("report serializes"),
        pass: rep.all_pass(),
    })
}

fn cmd_reduce_sat(path: &Path, emit_graph: Option<&Path>, emit_roles: Option<&Path>) -> Outcome {
    let psi = load_lsat(path)?;
    let sat = if psi.is_saturated() { psi.clone() } else { saturate(&psi) };
    let gg = build_gadget(&sat)?;
    let g = &gg.graph;
    let roles: serde_json::Map<String, Value> =
        gg.roles.iter().enumerate().map(|(v, r)| (v.to_string(), json!(r.to_string()))).collect();
    if let Some(p) = emit_graph {
        write(p, &write_graph(g))?;
    }
    if let Some(p) = emit_roles {
        let body = json!({
            "schema": 1,
            "roles": roles,
            "od_target": gg.od_target(),
            "otd_target": gg.otd_target(),
        });
        write(p, &format!("{}\n", serde_json::to_string_pretty(&body).expect("json")))?;
    }
    let text = format!(
        "variables {} (input {})\nclauses {} (input {})\nvertices {}\nedges {}\nOD target {}\nOTD target {}\n",
        sat.n_vars,
        psi.n_vars,
        sat.m(),
        psi.m(),
        g.n(),
        g.edge_count(),
        gg.od_target(),
        gg.otd_target()
    );
    let json = json!({
        "input": {"variables": psi.n_vars, "clauses": psi.m()},
        "saturated": {"variables": sat.n_vars, "clauses": sat.m()},
        "vertices": g.n(),
        "edges": g.edge_count(),
        "od_target": gg.od_target(),
        "otd_target": gg.otd_target(),
        "roles": roles,
    });
    ok(text, json)
}

fn sat_table(rows: &[report::SatRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.formula.clone(),
                r.n_vars.to_string(),
                r.n_clauses.to_string(),
                r.order.to_string(),
                if r.satisfiable { "sat" } else { "unsat" }.to_string(),
                format!("{}/{}", r.od, r.od_target),
                format!("{}/{}", r.otd, r.otd_target),
                r.optima_checked.to_string(),
                verdict(r.pass),
            ]
        })
        .collect();
    let mut out = table(&["formula", "n", "m", "|V|", "sat", "od/target", "otd/target", "optima", "verdict"], &body);
    for r in rows.iter().filter(|r| !r.pass) {
        for f in &r.failures {
            let _ = writeln!(out, "  {}: {f}", r.formula);
        }
    }
    out
}

fn sat_suite(max_vars: usize, max_clauses: usize) -> Result<Vec<report::SatRow>, Failure> {
    let instances = enumerate_sl_sat(max_vars, max_clauses);
    let rows: odcode::Result<Vec<_>> = instances.par_iter().map(report::sat_roundtrip).collect();
    Ok(rows?)
}

fn cmd_sat_roundtrip(formula: Option<&Path>, max_vars: usize, max_clauses: usize) -> Outcome {
    let rows = match formula {
        Some(p) => {
            let psi = load_lsat(p)?;
            let sat = if psi.is_saturated() { psi } else { saturate(&psi) };
            vec![report::sat_roundtrip(&sat)?]
        }
        None => sat_suite(max_vars, max_clauses)?,
    };
    let pass = rows.iter().all(|r| r.pass);
    let mut text = sat_table(&rows);
    let _ = writeln!(text, "{} instance(s): {}", rows.len(), verdict(pass));
    Ok(Output {
        text,
        json: json!({ "rows": rows, "pass": pass }),
        pass,
    })
}

#[derive(Deserialize)]
struct ClutterFile {
    n: usize,
    edges: Vec<Vec<usize>>,
}

fn cmd_tau(path: &Path, enumerate: bool, cap: usize) -> Outcome {
    let cf: ClutterFile = serde_json::from_str(&read(path)?).map_err(|e| Failure::Lib(odcode::Error::Json(e.to_string())))?;
    let edges = cf.edges.into_iter().map(|e| VertexSet::from_iter_n(cf.n, e)).collect();
    let c = Clutter::from_edges(cf.n, edges)?;
    let r = min_cover(&c, enumerate, cap);
    let mut text = format!("{}\ncover {}\n", r.value, r.witness);
    let mut json = json!({
        "tau": r.value,
        "cover": set_json(&r.witness),
        "nodes_explored": r.nodes_explored,
    });
    if let Some(all) = &r.all_optima {
        let _ = writeln!(text, "optima {}{}", all.len(), if r.truncated { " (truncated)" } else { "" });
        for s in all {
            let _ = writeln!(text, "{s}");
        }
        json["optima"] = json!(all.iter().map(set_json).collect::<Vec<_>>());
        json["truncated"] = json!(r.truncated);
    }
    ok(text, json)
}

fn hint_spec(hint: FamilyHint, k: usize) -> Option<FamilySpec> {
    Some(match hint {
        FamilyHint::Clique => FamilySpec::Clique { n: k },
        FamilyHint::Matching => FamilySpec::Matching { k },
        FamilyHint::Fan => FamilySpec::Fan { k },
        FamilyHint::HalfGraph => FamilySpec::HalfGraph { k },
        FamilyHint::ThickSpider => FamilySpec::ThickSpider { k },
        FamilyHint::ThinSpider => FamilySpec::ThinSpider { k },
        FamilyHint::ExtendedThinSpider => FamilySpec::ExtendedThinSpider { k },
        FamilyHint::Sunlet => FamilySpec::Sunlet { k },
        FamilyHint::AlmostCompleteThinSun => FamilySpec::AlmostCompleteThinSun { l: k },
        FamilyHint::Generic => return None,
    })
}

fn cmd_polyhedron(family: &str, k: Option<usize>, graph: Option<&Path>, check: Check) -> Outcome {
    let hint = FamilyHint::from_name(family).ok_or_else(|| {
        let names: Vec<&str> = FamilyHint::ALL.iter().map(|h| h.name()).collect();
        Failure::Usage(format!("unknown family `{family}` (expected one of {})", names.join(", ")))
    })?;
    let g = match (graph, k.and_then(|k| hint_spec(hint, k))) {
        (Some(p), _) => load_graph(p)?,
        (None, Some(spec)) => generate(&spec)?,
        (None, None) => {
            return Err(Failure::Usage(match hint {
                FamilyHint::Generic => "the generic system needs --graph".into(),
                _ => "--k or --graph is required".into(),
            }))
        }
    };
    let sys = od_polyhedron_system(&g, hint)?;
    let c = Clutter::of_graph(&g, CodeKind::Od)?;
    let name = |v: usize| g.label(v).map_or(format!("x{v}"), |l| format!("x[{l}]"));
    let mut text = format!("n {}\n", sys.n);
    for &v in &sys.equalities {
        let _ = writeln!(text, "{} = 1", name(v));
    }
    for r in &sys.inequalities {
        let terms: Vec<String> = r.support.iter().map(name).collect();
        let _ = writeln!(text, "{} >= {}", terms.join(" + "), r.rhs);
    }
    let _ = writeln!(text, "x >= 0");
    let mut json = json!({
        "family": hint.name(),
        "system": serde_json::to_value(&sys).expect("system serializes"),
    });
    let mut pass = true;
    if matches!(check, Check::Validity | Check::All) {
        let r = check_validity(&sys, &c)?;
        let _ = writeln!(text, "validity {} ({} covers checked)", verdict(r.valid), r.points_checked);
        if let Some((x, what)) = &r.counterexample {
            let _ = writeln!(text, "  cover {x} violates {what}");
        }
        pass &= r.valid;
        json["validity"] = serde_json::to_value(&r).expect("json");
    }
    if matches!(check, Check::Tightness | Check::All) {
        let r = check_tightness(&sys, &c)?;
        let _ = writeln!(text, "tightness {}", verdict(r.all_tight));
        for t in &r.never_tight {
            let _ = writeln!(text, "  never tight: {t}");
        }
        pass &= r.all_tight;
        json["tightness"] = serde_json::to_value(&r).expect("json");
    }
    if matches!(check, Check::Hull | Check::All) {
        let r = integer_hull_equiv(&sys, &c, 16)?;
        let _ = writeln!(text, "0/1 hull {}", verdict(r.equivalent));
        if let Some(w) = &r.witness {
            let _ = writeln!(text, "  point {w} (cover: {})", r.witness_is_cover.unwrap_or(false));
        }
        pass &= r.equivalent;
        json["hull"] = serde_json::to_value(&r).expect("json");
    }
    Ok(Output { text, json, pass })
}

fn value_table(rows: &[report::ValueRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.graph.clone(),
                r.n.to_string(),
                r.kind.to_string(),
                r.expected.to_string(),
                r.solver.to_string(),
                r.brute_force.map_or("-".into(), |b| b.to_string()),
                verdict(r.pass),
            ]
        })
        .collect();
    table(&["graph", "n", "kind", "expected", "solver", "brute", "verdict"], &body)
}

fn cmd_paper_report(section: Section, max_k: usize, seed: u64) -> Outcome {
    let want = |s: Section| section == Section::All || section == s;
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    let mut pass = true;
    let heading = |text: &mut String, title: &str, ok: bool| {
        if !text.is_empty() {
            text.push('\n');
        }
        let _ = writeln!(text, "== {title}: {}", verdict(ok));
    };
    if want(Section::SmallGraphs) {
        let rows = report::small_graph_rows()?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "small graphs", ok);
        text.push_str(&value_table(&rows));
        pass &= ok;
        json.insert("small_graphs".into(), json!(rows));
    }
    if want(Section::Families) {
        let rows = report::family_rows(2 * max_k + 1, max_k)?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "family formulas", ok);
        text.push_str(&value_table(&rows));
        pass &= ok;
        json.insert("families".into(), json!(rows));
    }
    if want(Section::Clutters) {
        let rows = report::clutter_shape_rows(max_k)?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "clutter shapes", ok);
        let body: Vec<Vec<String>> = rows.iter().map(|r| vec![r.name.clone(), r.detail.clone(), verdict(r.pass)]).collect();
        text.push_str(&table(&["check", "detail", "verdict"], &body));
        pass &= ok;
        json.insert("clutters".into(), json!(rows));
    }
    if want(Section::Relations) {
        let rows = report::relation_rows(200, 10, seed)?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "bounds and relations (200 random graphs)", ok);
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.index.to_string(),
                    r.n.to_string(),
                    r.edges.to_string(),
                    r.od.to_string(),
                    r.otd.to_string(),
                    r.ld.to_string(),
                    r.ltd.to_string(),
                    r.optima.to_string(),
                    if r.pass { verdict(true) } else { r.failures.join("; ") },
                ]
            })
            .collect();
        text.push_str(&table(&["#", "n", "m", "OD", "OTD", "LD", "LTD", "optima", "verdict"], &body));
        pass &= ok;
        json.insert("relations".into(), json!(rows));
    }
    if want(Section::Sat) {
        let rows = sat_suite(4, 6)?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "SAT reduction", ok);
        text.push_str(&sat_table(&rows));
        pass &= ok;
        json.insert("sat".into(), json!(rows));
    }
    if want(Section::Qrose) {
        let rows = report::qrose_rows(8)?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "q-roses", ok);
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| vec![r.n.to_string(), r.q.to_string(), r.tau.to_string(), r.expected.to_string(), verdict(r.pass)])
            .collect();
        text.push_str(&table(&["n", "q", "tau", "n-q+1", "verdict"], &body));
        pass &= ok;
        json.insert("qrose".into(), json!(rows));
    }
    if want(Section::Polyhedra) {
        let rows = report::polyhedron_rows()?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "polyhedral systems", ok);
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.family.clone(),
                    r.n.to_string(),
                    r.equalities.to_string(),
                    r.inequalities.to_string(),
                    verdict(r.valid),
                    verdict(r.tight),
                    verdict(r.hull),
                    verdict(r.pass),
                ]
            })
            .collect();
        text.push_str(&table(&["family", "n", "eq", "ineq", "valid", "tight", "0/1 hull", "verdict"], &body));
        pass &= ok;
        json.insert("polyhedra".into(), json!(rows));
    }
    if want(Section::Oracle) {
        let rows = report::oracle_rows(12, seed)?;
        let ok = rows.iter().all(|r| r.pass);
        heading(&mut text, "solver vs brute force", ok);
        let bad: Vec<Vec<String>> = rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| vec![r.graph.clone(), r.kind.to_string(), r.solver.to_string(), r.brute_force.to_string()])
            .collect();
        let _ = writeln!(text, "{} comparisons, {} mismatches", rows.len(), bad.len());
        if !bad.is_empty() {
            text.push_str(&table(&["graph", "kind", "solver", "brute"], &bad));
        }
        pass &= ok;
        json.insert("oracle".into(), json!(rows));
    }
    json.insert("pass".into(), json!(pass));
    Ok(Output {
        text,
        json: Value::Object(json),
        pass,
    })
}

fn run(cmd: &Cmd) -> Outcome {
    match cmd {
        Cmd::Generate { family, params } => cmd_generate(family, params),
        Cmd::Clutter { kind, graph } => cmd_clutter(*kind, graph),
        Cmd::Gamma {
            kind,
            enumerate,
            cap,
            graph,
        } => cmd_gamma(*kind, *enumerate, *cap, graph),
        Cmd::Verify { kind, code, graph } => cmd_verify(*kind, code, graph),
        Cmd::Relations { graph } => cmd_relations(graph),
        Cmd::ReduceSat {
            formula,
            emit_graph,
            emit_roles,
        } => cmd_reduce_sat(formula, emit_graph.as_deref(), emit_roles.as_deref()),
        Cmd::SatRoundtrip {
            formula,
            max_vars,
            max_clauses,
        } => cmd_sat_roundtrip(formula.as_deref(), *max_vars, *max_clauses),
        Cmd::Tau { clutter, enumerate, cap } => cmd_tau(clutter, *enumerate, *cap),
        Cmd::Polyhedron { family, k, graph, check } => cmd_polyhedron(family, *k, graph.as_deref(), *check),
        Cmd::PaperReport { section, max_k, seed } => cmd_paper_report(*section, *max_k, *seed),
    }
}

fn with_header(command: &str, body: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(1));
    out.insert("command".into(), json!(command));
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

fn main() -> ExitCode {
    let json_requested = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if json_requested {
                let body = json!({"schema": 1, "error": {"kind": "usage", "message": e.kind().to_string(), "detail": e.to_string()}});
                println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    let name = cli.cmd.name();
    match run(&cli.cmd) {
        Ok(out) => {
            if cli.json {
                let body = with_header(name, out.json);
                println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(f) => {
            if cli.json {
                let body = json!({"schema": 1, "command": name, "error": {"kind": f.kind(), "message": f.message()}});
                println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(2)
        }
    }
}
