use std::collections::BTreeSet;

use itertools::Itertools;

use super::{LsatInstance, Lit};

/// Every saturated LSAT instance with `1..=max_vars` variables (all of them
/// occurring) and `1..=max_clauses` distinct clauses, one representative per
/// isomorphism class under renaming variables, flipping polarities and
/// reordering clauses.
pub fn enumerate_sl_sat(max_vars: usize, max_clauses: usize) -> Vec<LsatInstance> {
    let mut out = Vec::new();
    for n in 1..=max_vars {
        let mut seen: BTreeSet<Vec<Vec<Lit>>> = BTreeSet::new();
        let candidates = candidate_clauses(n);
        let mut state = Dfs {
            n,
            max_clauses,
            candidates: &candidates,
            chosen: Vec::new(),
            occ: vec![0; 2 * n],
            seen: &mut seen,
        };
        state.run(0);
        out.extend(seen.into_iter().map(|clauses| LsatInstance { n_vars: n, clauses }));
    }
    out.sort_by(|a, b| (a.n_vars, a.m(), &a.clauses).cmp(&(b.n_vars, b.m(), &b.clauses)));
    out
}

fn lit_slot(l: Lit) -> usize {
    2 * l.var + l.positive as usize
}

fn candidate_clauses(n: usize) -> Vec<Vec<Lit>> {
    let mut out = Vec::new();
    for size in 1..=3.min(n) {
        for vars in (0..n).combinations(size) {
            for signs in 0..1u32 << size {
                let clause: Vec<Lit> = vars
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Lit {
                        var: v,
                        positive: signs >> i & 1 == 1,
                    })
                    .collect();
                out.push(clause);
            }
        }
    }
    out
}

struct Dfs<'a> {
    n: usize,
    max_clauses: usize,
    candidates: &'a [Vec<Lit>],
    chosen: Vec<usize>,
    occ: Vec<u8>,
    seen: &'a mut BTreeSet<Vec<Vec<Lit>>>,
}

impl Dfs<'_> {
    fn run(&mut self, start: usize) {
        if !self.chosen.is_empty() && self.complete() {
            let clauses: Vec<Vec<Lit>> = self.chosen.iter().map(|&i| self.candidates[i].clone()).collect();
            self.seen.insert(canonical(self.n, &clauses));
        }
        let remaining = self.max_clauses - self.chosen.len();
        if remaining == 0 {
            return;
        }
        // Every literal seen once needs one more occurrence, every absent
        // variable at least two; each clause supplies at most three.
        let ones = self.occ.iter().filter(|&&c| c == 1).count();
        let absent = (0..self.n)
            .filter(|&x| self.occ[2 * x] == 0 && self.occ[2 * x + 1] == 0)
            .count();
        if ones + 2 * absent > 3 * remaining {
            return;
        }
        for i in start..self.candidates.len() {
            let c = &self.candidates[i];
            if c.iter().any(|&l| self.occ[lit_slot(l)] >= 2) {
                continue;
            }
            let clash = self.chosen.iter().any(|&j| {
                let d = &self.candidates[j];
                c.iter().filter(|l| d.contains(l)).count() > 1
            });
            if clash {
                continue;
            }
            for &l in c {
                self.occ[lit_slot(l)] += 1;
            }
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
            for &l in c {
                self.occ[lit_slot(l)] -= 1;
            }
        }
    }

    fn complete(&self) -> bool {
        self.occ.iter().all(|&c| c == 0 || c == 2)
            && (0..self.n).all(|x| self.occ[2 * x] + self.occ[2 * x + 1] > 0)
    }
}

/// Lexicographically least image under variable permutations and polarity flips.
fn canonical(n: usize, clauses: &[Vec<Lit>]) -> Vec<Vec<Lit>> {
    let mut best: Option<Vec<Vec<Lit>>> = None;
    for perm in (0..n).permutations(n) {
        for flips in 0..1u32 << n {
            let mut image: Vec<Vec<Lit>> = clauses
                .iter()
                .map(|c| {
                    let mut d: Vec<Lit> = c
                        .iter()
                        .map(|l| Lit {
                            var: perm[l.var],
                            positive: l.positive ^ (flips >> l.var & 1 == 1),
                        })
                        .collect();
                    d.sort();
                    d
                })
                .collect();
            image.sort();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    best.expect("at least the identity")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_variable_instances() {
        // With one variable the only clauses are (x) and (-x), so no literal
        // can occur twice.
        let all = enumerate_sl_sat(1, 4);
        assert!(all.is_empty());
    }

    #[test]
    fn enumerated_instances_are_valid_and_distinct() {
        let all = enumerate_sl_sat(3, 4);
        assert!(!all.is_empty());
        let mut keys = BTreeSet::new();
        for psi in &all {
            let again = LsatInstance::new(psi.n_vars, psi.clauses.clone()).expect("valid");
            assert!(again.is_saturated());
            assert!(keys.insert((psi.n_vars, canonical(psi.n_vars, &psi.clauses))));
        }
    }

    #[test]
    fn contains_the_unsatisfiable_example() {
        let all = enumerate_sl_sat(2, 6);
        let target = canonical(2, &super::super::unsatisfiable_example().clauses);
        assert!(all.iter().any(|p| p.n_vars == 2 && p.clauses == target));
    }
}
