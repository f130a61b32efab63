//! Linear SAT instances, saturation, and the reduction to OD/OTD-codes.
//!
//! An LSAT instance has clauses of at most three literals, no clause holding
//! both literals of a variable, each literal in at most two clauses, and any
//! two clauses sharing at most one literal. It is saturated (SL-SAT) when
//! every literal that occurs at all occurs in exactly two clauses.

mod enumerate;
mod gadget;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

pub use enumerate::enumerate_sl_sat;
pub use gadget::{
    assignment_to_code, assignment_to_code_with_anchor, auxiliary_graph, build_gadget, code_to_assignment,
    GadgetGraph, Role,
};

/// A literal: variable index (0-based) and polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// DIMACS form: `var + 1`, negative for negated literals.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "-x{}", self.var + 1)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LsatViolation {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header problem: {0}")]
    Header(String),
    #[error("header declares {declared} clauses, found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("clause {clause} mentions variable {var}, but only {n} are declared")]
    VariableOutOfRange { clause: usize, var: usize, n: usize },
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("clause {clause} has {len} literals (at most 3 allowed)")]
    ClauseTooLong { clause: usize, len: usize },
    #[error("clause {clause} repeats literal {lit}")]
    RepeatedLiteral { clause: usize, lit: String },
    #[error("clause {clause} contains both literals of x{}", var + 1)]
    ComplementaryLiterals { clause: usize, var: usize },
    #[error("literal {lit} occurs in {count} clauses (at most 2 allowed)")]
    LiteralOveruse { lit: String, count: usize },
    #[error("clauses {a} and {b} share {shared} literals (at most 1 allowed)")]
    SharedLiterals { a: usize, b: usize, shared: usize },
    #[error("clauses {a} and {b} are identical")]
    DuplicateClause { a: usize, b: usize },
}

impl LsatViolation {
    /// Name of the violated constraint.
    pub fn name(&self) -> &'static str {
        match self {
            LsatViolation::Syntax { .. } => "lsat_syntax",
            LsatViolation::Header(_) => "lsat_header",
            LsatViolation::CountMismatch { .. } => "lsat_count_mismatch",
            LsatViolation::VariableOutOfRange { .. } => "lsat_variable_out_of_range",
            LsatViolation::EmptyClause { .. } => "lsat_empty_clause",
            LsatViolation::ClauseTooLong { .. } => "lsat_clause_too_long",
            LsatViolation::RepeatedLiteral { .. } => "lsat_repeated_literal",
            LsatViolation::ComplementaryLiterals { .. } => "lsat_complementary_literals",
            LsatViolation::LiteralOveruse { .. } => "lsat_literal_overuse",
            LsatViolation::SharedLiterals { .. } => "lsat_shared_literals",
            LsatViolation::DuplicateClause { .. } => "lsat_duplicate_clause",
        }
    }
}

/// Clause numbers in violations are 1-based, matching the input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LsatInstance {
    pub n_vars: usize,
    /// Each clause sorted by literal order.
    pub clauses: Vec<Vec<Lit>>,
}

impl LsatInstance {
    /// Validates and normalises (sorts each clause).
    pub fn new(n_vars: usize, clauses: Vec<Vec<Lit>>) -> std::result::Result<LsatInstance, LsatViolation> {
        let mut clauses = clauses;
        for (i, c) in clauses.iter_mut().enumerate() {
            let clause = i + 1;
            if c.is_empty() {
                return Err(LsatViolation::EmptyClause { clause });
            }
            if let Some(l) = c.iter().find(|l| l.var >= n_vars) {
                return Err(LsatViolation::VariableOutOfRange {
                    clause,
                    var: l.var + 1,
                    n: n_vars,
                });
            }
            c.sort();
            if let Some(w) = c.windows(2).find(|w| w[0] == w[1]) {
                return Err(LsatViolation::RepeatedLiteral {
                    clause,
                    lit: w[0].to_string(),
                });
            }
            if let Some(w) = c.windows(2).find(|w| w[0].var == w[1].var) {
                return Err(LsatViolation::ComplementaryLiterals { clause, var: w[0].var });
            }
            if c.len() > 3 {
                return Err(LsatViolation::ClauseTooLong { clause, len: c.len() });
            }
        }
        let inst = LsatInstance { n_vars, clauses };
        for (lit, count) in inst.occurrences() {
            if count > 2 {
                return Err(LsatViolation::LiteralOveruse {
                    lit: lit.to_string(),
                    count,
                });
            }
        }
        for a in 0..inst.clauses.len() {
            for b in a + 1..inst.clauses.len() {
                let (ca, cb) = (&inst.clauses[a], &inst.clauses[b]);
                if ca == cb {
                    return Err(LsatViolation::DuplicateClause { a: a + 1, b: b + 1 });
                }
                let shared = ca.iter().filter(|l| cb.contains(l)).count();
                if shared > 1 {
                    return Err(LsatViolation::SharedLiterals {
                        a: a + 1,
                        b: b + 1,
                        shared,
                    });
                }
            }
        }
        Ok(inst)
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    /// Occurrence count of every literal that occurs.
    pub fn occurrences(&self) -> BTreeMap<Lit, usize> {
        let mut occ = BTreeMap::new();
        for c in &self.clauses {
            for &l in c {
                *occ.entry(l).or_insert(0) += 1;
            }
        }
        occ
    }

    pub fn occurs(&self, lit: Lit) -> bool {
        self.clauses.iter().any(|c| c.contains(&lit))
    }

    /// Every occurring literal occurs in exactly two clauses.
    pub fn is_saturated(&self) -> bool {
        self.occurrences().values().all(|&c| c == 2)
    }

    pub fn satisfies(&self, assignment: &[bool]) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    /// 0-based index of the first clause the assignment falsifies.
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.holds(assignment)))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("p lsat {} {}\n", self.n_vars, self.m());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{} ", l.to_dimacs()));
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Parses `p lsat <n> <m>` followed by DIMACS clauses ending in `0`.
/// Lines starting with `c` are comments.
pub fn parse_lsat(text: &str) -> std::result::Result<LsatInstance, LsatViolation> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(LsatViolation::Header("repeated header".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "lsat" {
                return Err(LsatViolation::Header(format!("expected `p lsat <n> <m>`, got `{line}`")));
            }
            let n = parts[2]
                .parse()
                .map_err(|_| LsatViolation::Header(format!("bad variable count `{}`", parts[2])))?;
            let m = parts[3]
                .parse()
                .map_err(|_| LsatViolation::Header(format!("bad clause count `{}`", parts[3])))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(LsatViolation::Header("clause before header".into()));
        };
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| LsatViolation::Syntax {
                line: lineno,
                message: format!("not an integer: `{tok}`"),
            })?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                let var = x.unsigned_abs() as usize - 1;
                if var >= n {
                    return Err(LsatViolation::VariableOutOfRange {
                        clause: clauses.len() + 1,
                        var: var + 1,
                        n,
                    });
                }
                current.push(Lit { var, positive: x > 0 });
            }
        }
    }
    let (n, m) = header.ok_or_else(|| LsatViolation::Header("missing header".into()))?;
    if !current.is_empty() {
        return Err(LsatViolation::Syntax {
            line: text.lines().count(),
            message: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != m {
        return Err(LsatViolation::CountMismatch {
            declared: m,
            found: clauses.len(),
        });
    }
    LsatInstance::new(n, clauses)
}

/// Adds, for each literal occurring exactly once, a fresh variable `y` with
/// clauses `(l ∨ y)` and `(y)`. Repeats until every occurring literal occurs
/// twice. Satisfiability is preserved since `(y)` forces `y`.
pub fn saturate(psi: &LsatInstance) -> LsatInstance {
    let mut out = psi.clone();
    loop {
        let once: Vec<Lit> = out
            .occurrences()
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(l, _)| l)
            .collect();
        if once.is_empty() {
            return out;
        }
        for l in once {
            let y = Lit::pos(out.n_vars);
            out.n_vars += 1;
            out.clauses.push(vec![l, y]);
            out.clauses.push(vec![y]);
        }
    }
}

pub const BRUTE_FORCE_SAT_LIMIT: usize = 24;

/// Exhaustive truth-table search. Returns the first model in binary counting
/// order (variable 0 is the lowest bit).
pub fn brute_force_sat(psi: &LsatInstance) -> Result<Option<Vec<bool>>> {
    if psi.n_vars > BRUTE_FORCE_SAT_LIMIT {
        return Err(Error::TooLarge {
            size: psi.n_vars,
            limit: BRUTE_FORCE_SAT_LIMIT,
        });
    }
    for mask in 0u32..(1u32 << psi.n_vars) {
        let a: Vec<bool> = (0..psi.n_vars).map(|v| mask >> v & 1 == 1).collect();
        if psi.satisfies(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// The unsatisfiable two-variable instance
/// `(x1)(-x1)(x2)(-x2)(x1 ∨ x2)(-x1 ∨ -x2)`.
pub fn unsatisfiable_example() -> LsatInstance {
    LsatInstance::new(
        2,
        vec![
            vec![Lit::pos(0)],
            vec![Lit::neg(0)],
            vec![Lit::pos(1)],
            vec![Lit::neg(1)],
            vec![Lit::pos(0), Lit::pos(1)],
            vec![Lit::neg(0), Lit::neg(1)],
        ],
    )
    .expect("valid instance")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_instance() {
        let psi = parse_lsat("c example\np lsat 2 1\n1 -2 0\n").unwrap();
        assert_eq!(psi.n_vars, 2);
        assert_eq!(psi.clauses, vec![vec![Lit::pos(0), Lit::neg(1)]]);
        assert_eq!(parse_lsat(&psi.to_text()).unwrap(), psi);
    }

    #[test]
    fn names_each_violation() {
        let cases: &[(&str, fn(&LsatViolation) -> bool)] = &[
            ("p lsat 2 2\n1 2 0\n1 2 0\n", |e| matches!(e, LsatViolation::DuplicateClause { .. })),
            ("p lsat 3 2\n1 2 3 0\n1 2 -3 0\n", |e| matches!(e, LsatViolation::SharedLiterals { .. })),
            ("p lsat 1 1\n1 -1 0\n", |e| matches!(e, LsatViolation::ComplementaryLiterals { .. })),
            ("p lsat 1 3\n1 0\n1 0\n1 0\n", |e| matches!(e, LsatViolation::LiteralOveruse { .. })),
            ("p lsat 1 2\n1 0\n1 0\n", |e| matches!(e, LsatViolation::DuplicateClause { .. })),
            ("p lsat 3 3\n1 2 0\n1 3 0\n1 -2 0\n", |e| matches!(e, LsatViolation::LiteralOveruse { .. })),
            ("p lsat 4 1\n1 2 3 4 0\n", |e| matches!(e, LsatViolation::ClauseTooLong { .. })),
            ("p lsat 2 1\n1 1 0\n", |e| matches!(e, LsatViolation::RepeatedLiteral { .. })),
            ("p lsat 1 1\n0\n", |e| matches!(e, LsatViolation::EmptyClause { .. })),
            ("p lsat 1 1\n2 0\n", |e| matches!(e, LsatViolation::VariableOutOfRange { .. })),
            ("p lsat 1 2\n1 0\n", |e| matches!(e, LsatViolation::CountMismatch { .. })),
            ("1 0\n", |e| matches!(e, LsatViolation::Header(_))),
            ("p cnf 1 1\n1 0\n", |e| matches!(e, LsatViolation::Header(_))),
            ("p lsat 1 1\n1 x 0\n", |e| matches!(e, LsatViolation::Syntax { .. })),
            ("p lsat 1 1\n1\n", |e| matches!(e, LsatViolation::Syntax { .. })),
        ];
        for (text, pred) in cases {
            let err = parse_lsat(text).unwrap_err();
            assert!(pred(&err), "{text:?} gave {err:?}");
        }
    }

    #[test]
    fn saturating_a_single_clause() {
        let psi = LsatInstance::new(1, vec![vec![Lit::pos(0)]]).unwrap();
        let sat = saturate(&psi);
        assert_eq!(sat.n_vars, 2);
        assert_eq!(
            sat.clauses,
            vec![vec![Lit::pos(0)], vec![Lit::pos(0), Lit::pos(1)], vec![Lit::pos(1)]]
        );
        assert!(sat.is_saturated());
        assert_eq!(saturate(&sat), sat);
        assert!(LsatInstance::new(sat.n_vars, sat.clauses.clone()).is_ok());
    }

    #[test]
    fn unsatisfiable_example_is_saturated_and_unsat() {
        let psi = unsatisfiable_example();
        assert!(psi.is_saturated());
        assert_eq!(brute_force_sat(&psi).unwrap(), None);
    }

    #[test]
    fn brute_force_basics() {
        let psi = LsatInstance::new(1, vec![vec![Lit::pos(0)]]).unwrap();
        assert_eq!(brute_force_sat(&psi).unwrap(), Some(vec![true]));
        let empty = LsatInstance::new(3, vec![]).unwrap();
        assert_eq!(brute_force_sat(&empty).unwrap(), Some(vec![false; 3]));
    }
}
