//! Generators for the structured graph families and small named graphs,
//! together with their known closed-form code numbers.
//!
//! Role labels use 1-based indices (`q_1`, `s_1`, `c_1`, `u_1`, `w_1`) so they
//! read like the usual notation; vertex indices are 0-based. Layouts:
//!
//! * half-graph `B_k`: `u_1..u_k` = `0..k`, `w_1..w_k` = `k..2k`
//! * double star `D_k`: `u_0` = 0, `u_i` = `i`, `w_i` = `k + i`
//! * spiders: `q_i` = `i - 1`, `s_i` = `k + i - 1`, extended spider adds `s_0` = `2k`
//! * thin suns: `c_i` = `i - 1` (cycle order), `s_i` = `k + i - 1`
//! * clique-star: the cliques in order, then the universal vertex `u`

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::kind::CodeKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum NamedGraph {
    Gem,
    GemComplement,
    Bull,
    /// Six-vertex tree: a path on five vertices with a pendant at the middle.
    Bow,
    Net,
    Sun,
    TwoP2,
    P4,
    P5,
    /// Two triangles sharing one vertex.
    Butterfly,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 10] = [
        NamedGraph::Gem,
        NamedGraph::GemComplement,
        NamedGraph::Bull,
        NamedGraph::Bow,
        NamedGraph::Net,
        NamedGraph::Sun,
        NamedGraph::TwoP2,
        NamedGraph::P4,
        NamedGraph::P5,
        NamedGraph::Butterfly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGraph::Gem => "gem",
            NamedGraph::GemComplement => "gemComplement",
            NamedGraph::Bull => "bull",
            NamedGraph::Bow => "bow",
            NamedGraph::Net => "net",
            NamedGraph::Sun => "sun",
            NamedGraph::TwoP2 => "twoP2",
            NamedGraph::P4 => "P4",
            NamedGraph::P5 => "P5",
            NamedGraph::Butterfly => "butterfly",
        }
    }

    pub fn from_name(s: &str) -> Option<NamedGraph> {
        NamedGraph::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Clique { n: usize },
    UnionOfCliques { sizes: Vec<usize> },
    CliqueStar { sizes: Vec<usize> },
    Fan { k: usize },
    HalfGraph { k: usize },
    DoubleStar { k: usize },
    ThinSpider { k: usize },
    ThickSpider { k: usize },
    ExtendedThinSpider { k: usize },
    Sunlet { k: usize },
    AlmostCompleteThinSun { l: usize },
    /// Thin sun on cycle `c_1..c_k` with extra chords given as 0-based cycle positions.
    ThinSun { k: usize, chords: Vec<(usize, usize)> },
    Path { n: usize },
    Cycle { n: usize },
    Matching { k: usize },
    Named { name: NamedGraph },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Clique { n } => write!(f, "clique(n={n})"),
            FamilySpec::UnionOfCliques { sizes } => write!(f, "union-of-cliques(sizes={})", list(sizes)),
            FamilySpec::CliqueStar { sizes } => write!(f, "clique-star(sizes={})", list(sizes)),
            FamilySpec::Fan { k } => write!(f, "fan(k={k})"),
            FamilySpec::HalfGraph { k } => write!(f, "half-graph(k={k})"),
            FamilySpec::DoubleStar { k } => write!(f, "double-star(k={k})"),
            FamilySpec::ThinSpider { k } => write!(f, "thin-spider(k={k})"),
            FamilySpec::ThickSpider { k } => write!(f, "thick-spider(k={k})"),
            FamilySpec::ExtendedThinSpider { k } => write!(f, "extended-thin-spider(k={k})"),
            FamilySpec::Sunlet { k } => write!(f, "sunlet(k={k})"),
            FamilySpec::AlmostCompleteThinSun { l } => write!(f, "almost-complete-thin-sun(l={l})"),
            FamilySpec::ThinSun { k, chords } => write!(f, "thin-sun(k={k},chords={})", chords.len()),
            FamilySpec::Path { n } => write!(f, "path(n={n})"),
            FamilySpec::Cycle { n } => write!(f, "cycle(n={n})"),
            FamilySpec::Matching { k } => write!(f, "matching(k={k})"),
            FamilySpec::Named { name } => write!(f, "{}", name.name()),
        }
    }
}

/// A code number known in closed form for a family instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaPrediction {
    pub kind: CodeKind,
    pub value: usize,
    pub source: &'static str,
}

fn param(msg: impl Into<String>) -> Error {
    Error::FamilyParameter(msg.into())
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(param(msg))
    }
}

impl FamilySpec {
    /// Builds a spec from a CLI-style family name and `key=value` parameters.
    ///
    /// `sizes` and `chords` take comma-free lists separated by `:` or `,`
    /// (e.g. `sizes=2:3:3`, `chords=0-2:1-3`).
    pub fn parse(family: &str, params: &str) -> Result<FamilySpec> {
        let mut k: Option<usize> = None;
        let mut sizes: Option<Vec<usize>> = None;
        let mut chords: Vec<(usize, usize)> = Vec::new();
        let mut name: Option<String> = None;
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| param(format!("not a number: `{s}`")));
        // Split on commas, but commas directly following a `sizes=` value
        // belong to the list.
        let mut current_key = String::new();
        for tok in params.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, val) = match tok.split_once('=') {
                Some((a, b)) => {
                    current_key = a.trim().to_string();
                    (current_key.clone(), b.trim())
                }
                None if current_key == "sizes" || current_key == "chords" => (current_key.clone(), tok),
                None => return Err(param(format!("expected key=value, got `{tok}`"))),
            };
            match key.as_str() {
                "k" | "n" | "l" => k = Some(num(val)?),
                "sizes" => {
                    let list = sizes.get_or_insert_with(Vec::new);
                    for s in val.split(':').filter(|s| !s.is_empty()) {
                        list.push(num(s)?);
                    }
                }
                "chords" => {
                    for c in val.split(':').filter(|s| !s.is_empty()) {
                        let (a, b) = c
                            .split_once('-')
                            .ok_or_else(|| param(format!("chord must be i-j, got `{c}`")))?;
                        chords.push((num(a)?, num(b)?));
                    }
                }
                "name" => name = Some(val.to_string()),
                other => return Err(param(format!("unknown parameter `{other}`"))),
            }
        }
        let need_k = || k.ok_or_else(|| param(format!("family `{family}` needs k=")));
        let need_sizes = || sizes.clone().ok_or_else(|| param(format!("family `{family}` needs sizes=")));
        let spec = match family {
            "clique" => FamilySpec::Clique { n: need_k()? },
            "union-of-cliques" => FamilySpec::UnionOfCliques { sizes: need_sizes()? },
            "clique-star" => FamilySpec::CliqueStar { sizes: need_sizes()? },
            "fan" => FamilySpec::Fan { k: need_k()? },
            "half-graph" => FamilySpec::HalfGraph { k: need_k()? },
            "double-star" => FamilySpec::DoubleStar { k: need_k()? },
            "thin-spider" => FamilySpec::ThinSpider { k: need_k()? },
            "thick-spider" => FamilySpec::ThickSpider { k: need_k()? },
            "extended-thin-spider" => FamilySpec::ExtendedThinSpider { k: need_k()? },
            "sunlet" => FamilySpec::Sunlet { k: need_k()? },
            "almost-complete-thin-sun" => FamilySpec::AlmostCompleteThinSun { l: need_k()? },
            "thin-sun" => FamilySpec::ThinSun { k: need_k()?, chords },
            "path" => FamilySpec::Path { n: need_k()? },
            "cycle" => FamilySpec::Cycle { n: need_k()? },
            "matching" => FamilySpec::Matching { k: need_k()? },
            "named" => {
                let nm = name.ok_or_else(|| param("family `named` needs name="))?;
                FamilySpec::Named {
                    name: NamedGraph::from_name(&nm).ok_or_else(|| param(format!("unknown named graph `{nm}`")))?,
                }
            }
            other => match NamedGraph::from_name(other) {
                Some(name) => FamilySpec::Named { name },
                None => return Err(param(format!("unknown family `{other}`"))),
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Clique { n } => need(*n >= 1, "clique needs n >= 1"),
            FamilySpec::UnionOfCliques { sizes } => {
                need(!sizes.is_empty(), "union of cliques needs at least one part")?;
                need(sizes.iter().all(|&s| s >= 1), "clique sizes must be positive")
            }
            FamilySpec::CliqueStar { sizes } => {
                need(!sizes.is_empty(), "clique-star needs at least one part")?;
                need(sizes.iter().all(|&s| s >= 1), "clique sizes must be positive")?;
                need(
                    sizes.iter().filter(|&&s| s == 1).count() <= 1,
                    "clique-star allows at most one part of size 1",
                )
            }
            FamilySpec::Fan { k } => need(*k >= 2, "fan needs k >= 2"),
            FamilySpec::HalfGraph { k } => need(*k >= 1, "half-graph needs k >= 1"),
            FamilySpec::DoubleStar { k } => need(*k >= 2, "double star needs k >= 2"),
            FamilySpec::ThinSpider { k } | FamilySpec::ThickSpider { k } | FamilySpec::ExtendedThinSpider { k } => {
                need(*k >= 3, "spiders need k >= 3")
            }
            FamilySpec::Sunlet { k } => need(*k >= 3, "sunlet needs k >= 3"),
            FamilySpec::AlmostCompleteThinSun { l } => need(*l >= 3, "almost complete thin sun needs l >= 3"),
            FamilySpec::ThinSun { k, chords } => {
                need(*k >= 3, "thin sun needs k >= 3")?;
                let mut seen = BTreeSet::new();
                for &(a, b) in chords {
                    need(a < *k && b < *k && a != b, "chord endpoints must be distinct cycle positions")?;
                    let (a, b) = (a.min(b), a.max(b));
                    need(b - a != 1 && !(a == 0 && b == k - 1), "chord repeats a cycle edge")?;
                    need(seen.insert((a, b)), "repeated chord")?;
                }
                Ok(())
            }
            FamilySpec::Path { n } => need(*n >= 1, "path needs n >= 1"),
            FamilySpec::Cycle { n } => need(*n >= 3, "cycle needs n >= 3"),
            FamilySpec::Matching { k } => need(*k >= 1, "matching needs k >= 1"),
            FamilySpec::Named { .. } => Ok(()),
        }
    }

    /// Vertex count of the generated graph.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Clique { n } | FamilySpec::Path { n } | FamilySpec::Cycle { n } => *n,
            FamilySpec::UnionOfCliques { sizes } => sizes.iter().sum(),
            FamilySpec::CliqueStar { sizes } => 1 + sizes.iter().sum::<usize>(),
            FamilySpec::Fan { k } => 2 * k + 1,
            FamilySpec::HalfGraph { k }
            | FamilySpec::ThinSpider { k }
            | FamilySpec::ThickSpider { k }
            | FamilySpec::Sunlet { k }
            | FamilySpec::ThinSun { k, .. }
            | FamilySpec::Matching { k } => 2 * k,
            FamilySpec::DoubleStar { k } | FamilySpec::ExtendedThinSpider { k } => 2 * k + 1,
            FamilySpec::AlmostCompleteThinSun { l } => 4 * l,
            FamilySpec::Named { name } => generate_named(*name).n(),
        }
    }
}

fn add(b: &mut GraphBuilder, u: usize, v: usize) {
    b.add_edge(u, v).expect("generator produces a simple graph");
}

fn lab(b: &mut GraphBuilder, v: usize, l: String) {
    b.label(v, l).expect("label in range");
}

fn cliques_into(b: &mut GraphBuilder, sizes: &[usize]) -> usize {
    let mut base = 0;
    for &s in sizes {
        for i in 0..s {
            for j in i + 1..s {
                add(b, base + i, base + j);
            }
        }
        base += s;
    }
    base
}

/// Thin sun with the given chord set on the cycle positions.
fn thin_sun(k: usize, chords: &[(usize, usize)]) -> Graph {
    let mut b = GraphBuilder::new(2 * k);
    for i in 0..k {
        add(&mut b, i, (i + 1) % k);
        add(&mut b, i, k + i);
        lab(&mut b, i, format!("c_{}", i + 1));
        lab(&mut b, k + i, format!("s_{}", i + 1));
    }
    for &(a, c) in chords {
        add(&mut b, a, c);
    }
    b.build()
}

fn all_chords(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..k {
        for c in a + 2..k {
            if !(a == 0 && c == k - 1) {
                out.push((a, c));
            }
        }
    }
    out
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let g = match spec {
        FamilySpec::Clique { n } => {
            let mut b = GraphBuilder::new(*n);
            cliques_into(&mut b, &[*n]);
            b.build()
        }
        FamilySpec::UnionOfCliques { sizes } => {
            let mut b = GraphBuilder::new(sizes.iter().sum());
            cliques_into(&mut b, sizes);
            b.build()
        }
        FamilySpec::CliqueStar { sizes } => {
            let n = 1 + sizes.iter().sum::<usize>();
            let mut b = GraphBuilder::new(n);
            let u = cliques_into(&mut b, sizes);
            for v in 0..u {
                add(&mut b, v, u);
            }
            lab(&mut b, u, "u".to_string());
            b.build()
        }
        FamilySpec::Fan { k } => generate(&FamilySpec::CliqueStar { sizes: vec![2; *k] })?,
        FamilySpec::HalfGraph { k } => {
            let k = *k;
            let mut b = GraphBuilder::new(2 * k);
            for i in 0..k {
                lab(&mut b, i, format!("u_{}", i + 1));
                lab(&mut b, k + i, format!("w_{}", i + 1));
                for j in i..k {
                    add(&mut b, i, k + j);
                }
            }
            b.build()
        }
        FamilySpec::DoubleStar { k } => {
            let k = *k;
            let mut b = GraphBuilder::new(2 * k + 1);
            lab(&mut b, 0, "u_0".to_string());
            for i in 1..=k {
                lab(&mut b, i, format!("u_{i}"));
                lab(&mut b, k + i, format!("w_{i}"));
                add(&mut b, 0, k + i);
                add(&mut b, i, k + i);
            }
            b.build()
        }
        FamilySpec::ThinSpider { k } | FamilySpec::ThickSpider { k } | FamilySpec::ExtendedThinSpider { k } => {
            let k = *k;
            let thick = matches!(spec, FamilySpec::ThickSpider { .. });
            let extended = matches!(spec, FamilySpec::ExtendedThinSpider { .. });
            let n = if extended { 2 * k + 1 } else { 2 * k };
            let mut b = GraphBuilder::new(n);
            cliques_into(&mut b, &[k]);
            for i in 0..k {
                lab(&mut b, i, format!("q_{}", i + 1));
                lab(&mut b, k + i, format!("s_{}", i + 1));
                for j in 0..k {
                    if (i == j) != thick {
                        add(&mut b, k + i, j);
                    }
                }
            }
            if extended {
                lab(&mut b, 2 * k, "s_0".to_string());
                for j in 0..k - 1 {
                    add(&mut b, 2 * k, j);
                }
            }
            b.build()
        }
        FamilySpec::Sunlet { k } => thin_sun(*k, &[]),
        FamilySpec::AlmostCompleteThinSun { l } => {
            let k = 2 * l;
            let chords: Vec<_> = all_chords(k).into_iter().filter(|&(a, c)| c - a != *l).collect();
            thin_sun(k, &chords)
        }
        FamilySpec::ThinSun { k, chords } => thin_sun(*k, chords),
        FamilySpec::Path { n } => {
            let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(*n, &edges)?
        }
        FamilySpec::Cycle { n } => {
            let edges: Vec<_> = (0..*n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
            Graph::from_edges(*n, &edges)?
        }
        FamilySpec::Matching { k } => {
            let edges: Vec<_> = (0..*k).map(|i| (2 * i, 2 * i + 1)).collect();
            Graph::from_edges(2 * k, &edges)?
        }
        FamilySpec::Named { name } => generate_named(*name),
    };
    Ok(g)
}

/// The thin sun whose cycle carries every chord: same edge set as the thin spider.
pub fn thin_sun_all_chords(k: usize) -> FamilySpec {
    FamilySpec::ThinSun {
        k,
        chords: all_chords(k),
    }
}

fn generate_named(name: NamedGraph) -> Graph {
    let (n, edges): (usize, &[(usize, usize)]) = match name {
        NamedGraph::Gem => (5, &[(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]),
        NamedGraph::GemComplement => (5, &[(0, 1), (1, 2), (2, 3)]),
        NamedGraph::Bull => (5, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)]),
        NamedGraph::Bow => (6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
        NamedGraph::TwoP2 => (4, &[(0, 1), (2, 3)]),
        NamedGraph::P4 => (4, &[(0, 1), (1, 2), (2, 3)]),
        NamedGraph::P5 => (5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
        NamedGraph::Butterfly => (5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
        NamedGraph::Net => return generate(&FamilySpec::ThinSpider { k: 3 }).unwrap(),
        NamedGraph::Sun => return generate(&FamilySpec::ThickSpider { k: 3 }).unwrap(),
    };
    Graph::from_edges(n, edges).expect("named graph edge list")
}

fn clique_part_sum(sizes: &[usize]) -> (usize, usize) {
    let twos = sizes.iter().filter(|&&s| s == 2).count();
    let big: usize = sizes.iter().filter(|&&s| s >= 3).map(|s| s - 1).sum();
    (twos, big)
}

/// Every code number that is known in closed form for `spec`. Kinds without a
/// known value are omitted.
pub fn predicted_gamma(spec: &FamilySpec) -> Vec<GammaPrediction> {
    use CodeKind::*;
    let p = |kind, value, source| GammaPrediction { kind, value, source };
    match spec {
        FamilySpec::Clique { n } if *n >= 2 => vec![
            p(Od, n - 1, "clique"),
            p(Otd, if *n == 2 { 2 } else { n - 1 }, "clique"),
        ],
        FamilySpec::Matching { k } => vec![p(Od, 2 * k - 1, "matching"), p(Otd, 2 * k, "matching")],
        FamilySpec::UnionOfCliques { sizes } if sizes.len() >= 2 && sizes.iter().all(|&s| s >= 2) => {
            let (twos, big) = clique_part_sum(sizes);
            let otd = 2 * twos + big;
            let od = if twos > 0 { otd - 1 } else { big };
            vec![p(Od, od, "union of cliques"), p(Otd, otd, "union of cliques")]
        }
        FamilySpec::CliqueStar { sizes } if sizes.len() >= 2 => {
            let n1 = *sizes.iter().min().unwrap();
            let (twos, big) = clique_part_sum(sizes);
            let (od, otd) = if n1 == 1 {
                let l = 1 + twos;
                (2 * l - 1 + big, 2 * l - 1 + big)
            } else if n1 == 2 {
                (2 * twos - 1 + big, 2 * twos + big)
            } else {
                (big, big)
            };
            vec![p(Od, od, "clique-star"), p(Otd, otd, "clique-star")]
        }
        FamilySpec::Fan { k } => vec![p(Od, 2 * k - 1, "fan"), p(Otd, 2 * k, "fan")],
        FamilySpec::HalfGraph { k } => vec![p(Od, 2 * k - 1, "half-graph"), p(Otd, 2 * k, "half-graph")],
        FamilySpec::DoubleStar { k } if *k >= 3 => {
            vec![p(Od, 2 * k - 1, "double star"), p(Otd, 2 * k, "double star")]
        }
        FamilySpec::ThinSpider { k } => vec![p(Od, *k, "thin spider"), p(Otd, *k, "thin spider")],
        FamilySpec::ThickSpider { k } => vec![p(Od, k + 1, "thick spider"), p(Otd, k + 1, "thick spider")],
        FamilySpec::ExtendedThinSpider { k } if *k >= 4 => vec![
            p(Od, *k, "extended thin spider"),
            p(Otd, k + 1, "extended thin spider"),
        ],
        FamilySpec::Sunlet { k } if *k >= 5 => vec![p(Od, *k, "thin sun"), p(Otd, *k, "thin sun")],
        FamilySpec::AlmostCompleteThinSun { l } => vec![
            p(Od, 3 * l - 1, "almost complete thin sun"),
            p(Otd, 3 * l, "almost complete thin sun"),
        ],
        FamilySpec::ThinSun { k, .. } if *k >= 4 => {
            let g = generate(spec).expect("validated spec");
            match open_c_twins(&g) {
                Ok(t) if t.is_empty() => vec![p(Od, *k, "thin sun"), p(Otd, *k, "thin sun")],
                _ => Vec::new(),
            }
        }
        FamilySpec::Named { name } => {
            let (od, other) = match name {
                NamedGraph::Gem => (3, Some((Id, 4))),
                NamedGraph::GemComplement => (5, Some((Id, 4))),
                NamedGraph::Bull => (3, Some((Itd, 4))),
                NamedGraph::Bow => (5, Some((Itd, 3))),
                NamedGraph::TwoP2 => (3, Some((Ltd, 4))),
                NamedGraph::P4 => (3, Some((Ltd, 2))),
                NamedGraph::Net => return vec![p(Od, 3, "thin spider"), p(Otd, 3, "thin spider")],
                NamedGraph::Sun => return vec![p(Od, 4, "thick spider"), p(Otd, 4, "thick spider")],
                NamedGraph::P5 | NamedGraph::Butterfly => return Vec::new(),
            };
            let mut out = vec![p(Od, od, "small-graph table")];
            if let Some((k, v)) = other {
                out.push(p(k, v, "small-graph table"));
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Locates `c_1..c_k` and `s_1..s_k` and checks the thin-sun shape:
/// `s_i` adjacent to `c_i` only, the `c_i` forming a cycle in order.
pub fn sun_roles(g: &Graph) -> Result<(Vec<usize>, Vec<usize>)> {
    let mismatch = || Error::RoleMismatch("thin sun".to_string());
    let mut cs = Vec::new();
    let mut ss = Vec::new();
    for i in 1.. {
        match (g.vertex_by_label(&format!("c_{i}")), g.vertex_by_label(&format!("s_{i}"))) {
            (Some(c), Some(s)) => {
                cs.push(c);
                ss.push(s);
            }
            (None, None) => break,
            _ => return Err(mismatch()),
        }
    }
    let k = cs.len();
    if k < 3 || g.n() != 2 * k {
        return Err(mismatch());
    }
    for i in 0..k {
        if g.degree(ss[i]) != 1 || !g.has_edge(ss[i], cs[i]) || !g.has_edge(cs[i], cs[(i + 1) % k]) {
            return Err(mismatch());
        }
    }
    Ok((cs, ss))
}

/// Pairs `(c_i, c_j)` (vertex indices) that are non-adjacent with `N(c_i) ∩ C = N(c_j) ∩ C`.
pub fn open_c_twins(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let (cs, _) = sun_roles(g)?;
    let cset = crate::vset::VertexSet::from_iter_n(g.n(), cs.iter().copied());
    let nc: Vec<_> = cs.iter().map(|&c| g.nbrs(c).intersection(&cset)).collect();
    let mut out = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if !g.has_edge(cs[i], cs[j]) && nc[i] == nc[j] {
                out.push((cs[i], cs[j]));
            }
        }
    }
    Ok(out)
}

/// Erdős–Rényi sample conditioned on having no open twins, by rejection.
/// Test plumbing for the property suites.
pub fn random_open_twin_free<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    allow_isolated: bool,
) -> Graph {
    loop {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    add(&mut b, u, v);
                }
            }
        }
        let g = b.build();
        if g.open_twins().is_empty() && (allow_isolated || g.isolated_vertices().is_empty()) {
            return g;
        }
    }
}

/// All multisets of part sizes (non-decreasing) with each part in `min_part..`
/// and total `<= max_total`, having at least `min_parts` parts.
pub fn partitions(max_total: usize, min_part: usize, min_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, min_parts: usize) {
        if cur.len() >= min_parts {
            out.push(cur.clone());
        }
        for s in lo..=rem {
            cur.push(s);
            rec(rem - s, s, cur, out, min_parts);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_total, min_part.max(1), &mut Vec::new(), &mut out, min_parts);
    out
}

/// Family instances and named graphs on at most `max_n` vertices, plus seeded
/// random graphs. Used as the shared corpus for oracle comparisons.
pub fn corpus(max_n: usize, seed: u64) -> Vec<(String, Graph)> {
    use rand::SeedableRng;
    let mut specs: Vec<FamilySpec> = Vec::new();
    for n in 1..=max_n {
        specs.push(FamilySpec::Clique { n });
        specs.push(FamilySpec::Path { n });
        if n >= 3 {
            specs.push(FamilySpec::Cycle { n });
        }
    }
    for k in 1..=max_n / 2 {
        specs.push(FamilySpec::Matching { k });
        specs.push(FamilySpec::HalfGraph { k });
        if k >= 3 {
            specs.push(FamilySpec::ThinSpider { k });
            specs.push(FamilySpec::ThickSpider { k });
            specs.push(FamilySpec::Sunlet { k });
            specs.push(thin_sun_all_chords(k));
        }
        if k >= 2 {
            specs.push(FamilySpec::Fan { k });
        }
    }
    for k in 2..=max_n {
        if 2 * k < max_n {
            specs.push(FamilySpec::DoubleStar { k });
            if k >= 3 {
                specs.push(FamilySpec::ExtendedThinSpider { k });
            }
        }
    }
    for l in 3..=max_n / 4 {
        specs.push(FamilySpec::AlmostCompleteThinSun { l });
    }
    for sizes in partitions(max_n, 1, 2) {
        specs.push(FamilySpec::UnionOfCliques { sizes: sizes.clone() });
        if sizes.iter().sum::<usize>() < max_n && sizes.iter().filter(|&&s| s == 1).count() <= 1 {
            specs.push(FamilySpec::CliqueStar { sizes });
        }
    }
    for name in NamedGraph::ALL {
        specs.push(FamilySpec::Named { name });
    }
    let mut out: Vec<(String, Graph)> = specs
        .into_iter()
        .filter(|s| s.order() <= max_n)
        .map(|s| (s.to_string(), generate(&s).expect("corpus spec valid")))
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..40 {
        let n = 4 + i % (max_n.saturating_sub(3)).max(1);
        let n = n.min(max_n);
        let p = [0.25, 0.4, 0.55][i % 3];
        let g = random_open_twin_free(&mut rng, n, p, true);
        out.push((format!("random(n={n},p={p},#{i})"), g));
    }
    out
}
