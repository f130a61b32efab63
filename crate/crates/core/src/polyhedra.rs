//! Linear descriptions of covering polyhedra of OD-clutters, checked on 0/1
//! points.
//!
//! A [`ConstraintSystem`] lists equations `x_v = 1`, rank constraints
//! `x(V') >= r`, and (implicitly) `x >= 0`. The checks here enumerate 0/1
//! points, so they certify that a system is valid for every cover, that each
//! constraint is attained, and that its 0/1 solutions are exactly the covers.
//! They do not certify facet-ness or integrality of fractional vertices.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::cover::min_cover;
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::Graph;
use crate::kind::CodeKind;
use crate::vset::VertexSet;

/// `sum_{v in support} x_v >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankConstraint {
    pub support: VertexSet,
    pub rhs: usize,
    pub source: String,
}

impl fmt::Display for RankConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support.iter().map(|v| format!("x{v}")).collect();
        write!(f, "{} >= {}", terms.join(" + "), self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub n: usize,
    /// Vertices fixed to 1.
    pub equalities: Vec<usize>,
    pub inequalities: Vec<RankConstraint>,
}

impl ConstraintSystem {
    fn new(n: usize) -> Self {
        ConstraintSystem {
            n,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    /// Adds a rank constraint unless one with the same support is present.
    fn push(&mut self, support: VertexSet, rhs: usize, source: &str) {
        debug_assert!(rhs >= 1 && rhs <= support.len());
        if self.inequalities.iter().any(|c| c.support == support) {
            return;
        }
        self.inequalities.push(RankConstraint {
            support,
            rhs,
            source: source.to_string(),
        });
    }

    /// `x(V') >= |V'| - q + 1` for every `V' ⊆ base` with `|V'| >= q`.
    fn push_rose(&mut self, base: &[usize], q: usize, source: &str) {
        for size in q..=base.len() {
            for sub in base.iter().copied().combinations(size) {
                self.push(VertexSet::from_iter_n(self.n, sub), size - q + 1, source);
            }
        }
    }

    /// Whether the 0/1 point `mask` satisfies every equation and inequality.
    pub fn satisfied_by(&self, mask: u64) -> bool {
        self.equalities.iter().all(|&v| mask >> v & 1 == 1)
            && self
                .inequalities
                .iter()
                .all(|c| (mask & support_mask(&c.support)).count_ones() as usize >= c.rhs)
    }

    /// Vertices with an explicit non-negativity constraint (all non-fixed ones).
    pub fn nonneg_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|v| !self.equalities.contains(v)).collect()
    }
}

fn support_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0u64, |m, v| m | 1 << v)
}

/// Rank constraints of the q-rose `R^q_n`.
pub fn qrose_system(n: usize, q: usize) -> Result<ConstraintSystem> {
    if q < 2 || q >= n {
        return Err(Error::RoseParameters { n, q });
    }
    let mut sys = ConstraintSystem::new(n);
    let all: Vec<usize> = (0..n).collect();
    sys.push_rose(&all, q, "q-rose");
    Ok(sys)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyHint {
    Clique,
    Matching,
    Fan,
    HalfGraph,
    ThickSpider,
    ThinSpider,
    ExtendedThinSpider,
    Sunlet,
    AlmostCompleteThinSun,
    Generic,
}

impl FamilyHint {
    pub const ALL: [FamilyHint; 10] = [
        FamilyHint::Clique,
        FamilyHint::Matching,
        FamilyHint::Fan,
        FamilyHint::HalfGraph,
        FamilyHint::ThickSpider,
        FamilyHint::ThinSpider,
        FamilyHint::ExtendedThinSpider,
        FamilyHint::Sunlet,
        FamilyHint::AlmostCompleteThinSun,
        FamilyHint::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyHint::Clique => "clique",
            FamilyHint::Matching => "matching",
            FamilyHint::Fan => "fan",
            FamilyHint::HalfGraph => "half-graph",
            FamilyHint::ThickSpider => "thick-spider",
            FamilyHint::ThinSpider => "thin-spider",
            FamilyHint::ExtendedThinSpider => "extended-thin-spider",
            FamilyHint::Sunlet => "sunlet",
            FamilyHint::AlmostCompleteThinSun => "almost-complete-thin-sun",
            FamilyHint::Generic => "generic",
        }
    }

    pub fn from_name(s: &str) -> Option<FamilyHint> {
        FamilyHint::ALL.into_iter().find(|h| h.name() == s)
    }

    /// The family instance with `n` vertices this hint refers to, if any.
    fn spec_for(self, n: usize) -> Option<FamilySpec> {
        let half = n / 2;
        match self {
            FamilyHint::Clique => Some(FamilySpec::Clique { n }),
            FamilyHint::Matching if n.is_multiple_of(2) => Some(FamilySpec::Matching { k: half }),
            FamilyHint::Fan if n % 2 == 1 => Some(FamilySpec::Fan { k: half }),
            FamilyHint::HalfGraph if n.is_multiple_of(2) => Some(FamilySpec::HalfGraph { k: half }),
            FamilyHint::ThickSpider if n.is_multiple_of(2) => Some(FamilySpec::ThickSpider { k: half }),
            FamilyHint::ThinSpider if n.is_multiple_of(2) => Some(FamilySpec::ThinSpider { k: half }),
            FamilyHint::ExtendedThinSpider if n % 2 == 1 => Some(FamilySpec::ExtendedThinSpider { k: half }),
            FamilyHint::Sunlet if n.is_multiple_of(2) => Some(FamilySpec::Sunlet { k: half }),
            FamilyHint::AlmostCompleteThinSun if n.is_multiple_of(4) => Some(FamilySpec::AlmostCompleteThinSun { l: n / 4 }),
            _ => None,
        }
    }
}

/// The listed constraint system of the OD-polyhedron for a known family.
///
/// The graph must be the generator's output for that family (same indexing
/// and role labels); otherwise a [`Error::RoleMismatch`] is returned. The
/// generic hint emits `x_v = 1` for forced vertices and `x(F) >= 1` for every
/// other clutter edge.
pub fn od_polyhedron_system(g: &Graph, hint: FamilyHint) -> Result<ConstraintSystem> {
    let n = g.n();
    if hint != FamilyHint::Generic {
        let expected = hint
            .spec_for(n)
            .and_then(|s| generate(&s).ok())
            .ok_or_else(|| Error::RoleMismatch(hint.name().to_string()))?;
        if expected != *g {
            return Err(Error::RoleMismatch(hint.name().to_string()));
        }
    }
    let mut sys = ConstraintSystem::new(n);
    let at = |l: String| g.vertex_by_label(&l).expect("role present after match");
    let half = n / 2;
    match hint {
        FamilyHint::Generic => {
            let c = Clutter::of_graph(g, CodeKind::Od)?;
            sys.equalities = c.f1.to_vec();
            for e in c.f2 {
                sys.push(e, 1, "clutter edge");
            }
        }
        FamilyHint::Clique | FamilyHint::Matching => {
            let all: Vec<usize> = (0..n).collect();
            sys.push_rose(&all, 2, "2-rose");
        }
        FamilyHint::Fan => {
            let w2: Vec<usize> = (0..n).filter(|&v| g.label(v) != Some("u")).collect();
            sys.push_rose(&w2, 2, "2-rose");
        }
        FamilyHint::HalfGraph => {
            let k = half;
            let (u1, wk) = (at("u_1".into()), at(format!("w_{k}")));
            sys.equalities = (0..n).filter(|&v| v != u1 && v != wk).collect();
            sys.push(VertexSet::from_iter_n(n, [u1, wk]), 1, "clutter edge");
        }
        FamilyHint::ThickSpider => {
            let k = half;
            let s: Vec<usize> = (1..=k).map(|i| at(format!("s_{i}"))).collect();
            let q: Vec<usize> = (1..=k).map(|i| at(format!("q_{i}"))).collect();
            sys.push_rose(&s, k - 1, "(k-1)-rose");
            sys.push_rose(&q, 2, "2-rose");
        }
        FamilyHint::ThinSpider | FamilyHint::ExtendedThinSpider => {
            let k = half;
            let extended = hint == FamilyHint::ExtendedThinSpider;
            for i in 1..=k {
                let (qi, si) = (at(format!("q_{i}")), at(format!("s_{i}")));
                if extended && i == k {
                    sys.equalities.push(si);
                } else {
                    sys.push(VertexSet::from_iter_n(n, [qi, si]), 1, "clutter edge");
                }
            }
            let q: Vec<usize> = (1..=k).map(|i| at(format!("q_{i}"))).collect();
            sys.push_rose(&q, 2, "2-rose");
        }
        FamilyHint::Sunlet => {
            let k = half;
            let c = |i: usize| at(format!("c_{}", (i + k - 1) % k + 1));
            for i in 1..=k {
                let local = [at(format!("s_{i}")), c(i - 1 + k), c(i), c(i + 1)];
                sys.push_rose(&local, 2, "local 2-rose");
            }
            let cs: Vec<usize> = (1..=k).map(c).collect();
            sys.push_rose(&cs, 2, "2-rose");
        }
        FamilyHint::AlmostCompleteThinSun => {
            let l = n / 4;
            let s = |i: usize| at(format!("s_{i}"));
            let c = |i: usize| at(format!("c_{i}"));
            for i in 1..=l {
                sys.push(VertexSet::from_iter_n(n, [s(i), s(i + l)]), 1, "clutter edge");
            }
            for i in 1..=2 * l {
                sys.push(VertexSet::from_iter_n(n, [s(i), c(i)]), 1, "clutter edge");
            }
            let cs: Vec<usize> = (1..=2 * l).map(c).collect();
            sys.push_rose(&cs, 2, "2-rose");
        }
    }
    sys.equalities.sort();
    Ok(sys)
}

pub const ENUMERATION_LIMIT: usize = 16;

fn check_dims(sys: &ConstraintSystem, c: &Clutter) -> Result<()> {
    if sys.n != c.n {
        return Err(Error::DimensionMismatch {
            system: sys.n,
            clutter: c.n,
        });
    }
    Ok(())
}

/// All covers of `c` as bitmasks (`n <= ENUMERATION_LIMIT`).
fn all_covers(c: &Clutter) -> Vec<u64> {
    let edges: Vec<u64> = c.edges.iter().map(support_mask).collect();
    (0u64..1 << c.n)
        .filter(|&x| edges.iter().all(|&e| e & x != 0))
        .collect()
}

/// Points to test: every cover for small ground sets, otherwise the minimum covers.
fn sample_covers(c: &Clutter) -> Vec<u64> {
    if c.n <= ENUMERATION_LIMIT {
        all_covers(c)
    } else {
        let r = min_cover(c, true, crate::cover::DEFAULT_CAP);
        r.all_optima.unwrap_or_default().iter().map(support_mask).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub points_checked: usize,
    /// A cover violating the system, and a description of the violated constraint.
    pub counterexample: Option<(VertexSet, String)>,
}

/// Every (enumerated) cover satisfies every constraint.
pub fn check_validity(sys: &ConstraintSystem, c: &Clutter) -> Result<ValidityReport> {
    check_dims(sys, c)?;
    if c.n > 64 {
        return Err(Error::TooLarge { size: c.n, limit: 64 });
    }
    let points = sample_covers(c);
    for &x in &points {
        let bad_eq = sys.equalities.iter().find(|&&v| x >> v & 1 == 0);
        let bad_ineq = sys
            .inequalities
            .iter()
            .find(|r| ((x & support_mask(&r.support)).count_ones() as usize) < r.rhs);
        let violated = match (bad_eq, bad_ineq) {
            (Some(v), _) => Some(format!("x{v} = 1")),
            (None, Some(r)) => Some(r.to_string()),
            (None, None) => None,
        };
        if let Some(what) = violated {
            return Ok(ValidityReport {
                valid: false,
                points_checked: points.len(),
                counterexample: Some((mask_set(c.n, x), what)),
            });
        }
    }
    Ok(ValidityReport {
        valid: true,
        points_checked: points.len(),
        counterexample: None,
    })
}

fn mask_set(n: usize, x: u64) -> VertexSet {
    VertexSet::from_iter_n(n, (0..n).filter(|&v| x >> v & 1 == 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub all_tight: bool,
    /// Constraints (rendered) that no cover attains with equality.
    pub never_tight: Vec<String>,
}

/// Each inequality, and each non-negativity constraint of a non-fixed vertex,
/// holds with equality at some cover. Minimum covers are tried first.
pub fn check_tightness(sys: &ConstraintSystem, c: &Clutter) -> Result<TightnessReport> {
    check_dims(sys, c)?;
    if c.n > 64 {
        return Err(Error::TooLarge { size: c.n, limit: 64 });
    }
    let minimum: Vec<u64> = min_cover(c, true, crate::cover::DEFAULT_CAP)
        .all_optima
        .unwrap_or_default()
        .iter()
        .map(support_mask)
        .collect();
    let rest = if c.n <= ENUMERATION_LIMIT { all_covers(c) } else { Vec::new() };
    let tight_somewhere = |pred: &dyn Fn(u64) -> bool| minimum.iter().chain(rest.iter()).any(|&x| pred(x));
    let mut never_tight = Vec::new();
    for r in &sys.inequalities {
        let m = support_mask(&r.support);
        if !tight_somewhere(&|x| (x & m).count_ones() as usize == r.rhs) {
            never_tight.push(r.to_string());
        }
    }
    for v in sys.nonneg_vertices() {
        if !tight_somewhere(&|x| x >> v & 1 == 0) {
            never_tight.push(format!("x{v} >= 0"));
        }
    }
    Ok(TightnessReport {
        all_tight: never_tight.is_empty(),
        never_tight,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub equivalent: bool,
    /// A 0/1 point on which the system and the clutter disagree.
    pub witness: Option<VertexSet>,
    pub witness_is_cover: Option<bool>,
}

/// The 0/1 points satisfying the system are exactly the covers of `c`.
pub fn integer_hull_equiv(sys: &ConstraintSystem, c: &Clutter, n_max: usize) -> Result<HullReport> {
    check_dims(sys, c)?;
    let limit = n_max.min(63);
    if c.n > limit {
        return Err(Error::TooLarge { size: c.n, limit });
    }
    let edges: Vec<u64> = c.edges.iter().map(support_mask).collect();
    for x in 0u64..1 << c.n {
        let cover = edges.iter().all(|&e| e & x != 0);
        if cover != sys.satisfied_by(x) {
            return Ok(HullReport {
                equivalent: false,
                witness: Some(mask_set(c.n, x)),
                witness_is_cover: Some(cover),
            });
        }
    }
    Ok(HullReport {
        equivalent: true,
        witness: None,
        witness_is_cover: None,
    })
}

/// Minimum of `sum x` over the 0/1 points of the system (`n <= 63`).
pub fn integer_optimum(sys: &ConstraintSystem) -> Option<usize> {
    (0u64..1 << sys.n)
        .filter(|&x| sys.satisfied_by(x))
        .map(|x| x.count_ones() as usize)
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::q_rose;

    fn family(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn qrose_system_shape() {
        let sys = qrose_system(3, 2).unwrap();
        let rows: Vec<(Vec<usize>, usize)> = sys.inequalities.iter().map(|c| (c.support.to_vec(), c.rhs)).collect();
        assert_eq!(rows, vec![(vec![0, 1], 1), (vec![0, 2], 1), (vec![1, 2], 1), (vec![0, 1, 2], 2)]);
        assert!(qrose_system(2, 2).is_err());
        for n in 3..=7 {
            for q in 2..n {
                let sys = qrose_system(n, q).unwrap();
                assert_eq!(integer_optimum(&sys), Some(n - q + 1));
                assert!(integer_hull_equiv(&sys, &q_rose(n, q).unwrap(), 16).unwrap().equivalent);
            }
        }
    }

    #[test]
    fn half_graph_system() {
        let g = family(FamilySpec::HalfGraph { k: 3 });
        let sys = od_polyhedron_system(&g, FamilyHint::HalfGraph).unwrap();
        assert_eq!(sys.equalities, vec![1, 2, 3, 4]);
        assert_eq!(sys.inequalities.len(), 1);
        assert_eq!(sys.inequalities[0].support.to_vec(), vec![0, 5]);
    }

    #[test]
    fn hint_mismatch_is_detected() {
        let g = family(FamilySpec::ThinSpider { k: 4 });
        assert!(matches!(
            od_polyhedron_system(&g, FamilyHint::ThickSpider),
            Err(Error::RoleMismatch(_))
        ));
        assert!(od_polyhedron_system(&g, FamilyHint::ThinSpider).is_ok());
    }

    #[test]
    fn negative_controls() {
        let g = family(FamilySpec::Clique { n: 4 });
        let c = Clutter::of_graph(&g, CodeKind::Od).unwrap();
        let mut sys = od_polyhedron_system(&g, FamilyHint::Clique).unwrap();
        assert!(check_validity(&sys, &c).unwrap().valid);
        sys.inequalities[0].rhs += 1;
        let r = check_validity(&sys, &c).unwrap();
        assert!(!r.valid && r.counterexample.is_some());

        let g = family(FamilySpec::ThinSpider { k: 4 });
        let c = Clutter::of_graph(&g, CodeKind::Od).unwrap();
        let mut sys = od_polyhedron_system(&g, FamilyHint::ThinSpider).unwrap();
        assert!(integer_hull_equiv(&sys, &c, 16).unwrap().equivalent);
        sys.inequalities.remove(0);
        let h = integer_hull_equiv(&sys, &c, 16).unwrap();
        assert!(!h.equivalent);
        assert_eq!(h.witness_is_cover, Some(false));
    }

    #[test]
    fn thin_spider_lower_bound_from_pair_constraints() {
        let k = 5;
        let g = family(FamilySpec::ThinSpider { k });
        let sys = od_polyhedron_system(&g, FamilyHint::ThinSpider).unwrap();
        // The k pair constraints have disjoint supports, so their sum gives x(V) >= k.
        let pairs: Vec<&RankConstraint> = sys.inequalities.iter().filter(|r| r.source == "clutter edge").collect();
        assert_eq!(pairs.len(), k);
        let mut union = VertexSet::empty(g.n());
        for p in &pairs {
            assert!(!p.support.intersects(&union));
            union.union_with(&p.support);
        }
        assert_eq!(pairs.iter().map(|p| p.rhs).sum::<usize>(), k);
        assert_eq!(crate::codes::gamma(&g, CodeKind::Od).unwrap().value, k);
    }
}
