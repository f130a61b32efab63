//! Minimum set cover (hitting set) over clutters.
//!
//! Exact search is a depth-first branch and bound:
//! * a node fixes some vertices in and some out; an uncovered edge whose
//!   remaining candidates shrink to one vertex forces that vertex in;
//! * the bound is the current size plus a greedy packing of pairwise
//!   disjoint uncovered edges (each needs its own vertex);
//! * branching picks the most frequent vertex of a smallest uncovered edge,
//!   first taking it, then excluding it.
//!
//! Enumeration of all optima reruns the search with the value pinned to the
//! optimum; include/exclude branching makes the leaves distinct.

use serde::{Deserialize, Serialize};

use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::vset::VertexSet;

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub value: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    /// Present when enumeration was requested.
    pub all_optima: Option<Vec<VertexSet>>,
    /// Enumeration stopped at the cap.
    pub truncated: bool,
}

/// Max-coverage greedy cover; ties go to the lowest index.
pub fn greedy_cover(c: &Clutter) -> VertexSet {
    let mut chosen = VertexSet::empty(c.n);
    let mut open: Vec<&VertexSet> = c.edges.iter().collect();
    while !open.is_empty() {
        let mut best = (0usize, usize::MAX);
        for v in c.ground.iter() {
            let hits = open.iter().filter(|e| e.contains(v)).count();
            if hits > best.0 {
                best = (hits, v);
            }
        }
        let v = best.1;
        chosen.insert(v);
        open.retain(|e| !e.contains(v));
    }
    chosen
}

/// Closed form of the covering number of the q-rose `R^q_n`.
pub fn tau_q_rose(n: usize, q: usize) -> Result<usize> {
    if q < 2 || q >= n {
        return Err(Error::RoseParameters { n, q });
    }
    Ok(n - q + 1)
}

/// Exact minimum cover. With `enumerate`, also lists optimal covers up to `cap`.
pub fn min_cover(c: &Clutter, enumerate: bool, cap: usize) -> CoverResult {
    let ground: Vec<usize> = c.ground.to_vec();
    let words = ground.len().div_ceil(64).max(1);
    match words {
        1 => solve::<1>(c, &ground, enumerate, cap),
        2 => solve::<2>(c, &ground, enumerate, cap),
        3..=4 => solve::<4>(c, &ground, enumerate, cap),
        5..=8 => solve::<8>(c, &ground, enumerate, cap),
        9..=16 => solve::<16>(c, &ground, enumerate, cap),
        17..=64 => solve::<64>(c, &ground, enumerate, cap),
        _ => panic!("ground set of {} vertices exceeds the solver limit of 4096", ground.len()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct Bits<const W: usize>([u64; W]);

impl<const W: usize> Bits<W> {
    const ZERO: Self = Bits([0; W]);

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn and_not(&self, o: &Self) -> Self {
        let mut r = *self;
        for w in 0..W {
            r.0[w] &= !o.0[w];
        }
        r
    }
    fn or_assign(&mut self, o: &Self) {
        for w in 0..W {
            self.0[w] |= o.0[w];
        }
    }
    fn meets(&self, o: &Self) -> bool {
        (0..W).any(|w| self.0[w] & o.0[w] != 0)
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|x| x.count_ones()).sum()
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..W).flat_map(move |w| {
            let mut x = self.0[w];
            std::iter::from_fn(move || {
                if x == 0 {
                    None
                } else {
                    let t = x.trailing_zeros() as usize;
                    x &= x - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }
}

struct Search<'a, const W: usize> {
    edges: &'a [Bits<W>],
    m: usize,
    nodes: u64,
    best: usize,
    best_set: Bits<W>,
    /// `Some(opt)` while enumerating.
    pinned: Option<usize>,
    found: Vec<Bits<W>>,
    cap: usize,
    truncated: bool,
}

impl<const W: usize> Search<'_, W> {
    fn run(&mut self, mut sel: Bits<W>, excl: Bits<W>) {
        if self.truncated {
            return;
        }
        self.nodes += 1;
        // Unit propagation.
        let mut uncovered: Vec<(u32, Bits<W>)> = Vec::with_capacity(self.m);
        loop {
            uncovered.clear();
            let mut changed = false;
            for e in self.edges {
                if e.meets(&sel) {
                    continue;
                }
                let eff = e.and_not(&excl);
                match eff.count() {
                    0 => return,
                    1 => {
                        sel.or_assign(&eff);
                        changed = true;
                    }
                    c => uncovered.push((c, eff)),
                }
            }
            if !changed {
                break;
            }
        }
        let size = sel.count() as usize;
        if uncovered.is_empty() {
            self.leaf(sel, size);
            return;
        }
        // Disjoint packing bound.
        uncovered.sort_by_key(|&(c, _)| c);
        let mut used = Bits::<W>::ZERO;
        let mut packed = 0;
        for (_, e) in &uncovered {
            if !e.meets(&used) {
                used.or_assign(e);
                packed += 1;
            }
        }
        let lb = size + packed;
        match self.pinned {
            Some(opt) if lb > opt => return,
            None if lb >= self.best => return,
            _ => {}
        }
        // Branch vertex: most frequent in a smallest uncovered edge.
        let (_, pick) = uncovered[0];
        let mut best_v = usize::MAX;
        let mut best_f = 0;
        for v in pick.ones() {
            let f = uncovered.iter().filter(|(_, e)| e.has(v)).count();
            if f > best_f {
                best_f = f;
                best_v = v;
            }
        }
        let mut with = sel;
        with.set(best_v);
        self.run(with, excl);
        let mut without = excl;
        without.set(best_v);
        self.run(sel, without);
    }

    fn leaf(&mut self, sel: Bits<W>, size: usize) {
        match self.pinned {
            Some(opt) => {
                if size == opt {
                    if self.found.len() >= self.cap {
                        self.truncated = true;
                    } else {
                        self.found.push(sel);
                    }
                }
            }
            None => {
                if size < self.best {
                    self.best = size;
                    self.best_set = sel;
                }
            }
        }
    }
}

fn solve<const W: usize>(c: &Clutter, ground: &[usize], enumerate: bool, cap: usize) -> CoverResult {
    let mut index = vec![usize::MAX; c.n];
    for (i, &v) in ground.iter().enumerate() {
        index[v] = i;
    }
    let to_bits = |s: &VertexSet| {
        let mut b = Bits::<W>::ZERO;
        for v in s.iter() {
            b.set(index[v]);
        }
        b
    };
    let to_set = |b: &Bits<W>| VertexSet::from_iter_n(c.n, b.ones().map(|i| ground[i]));
    let edges: Vec<Bits<W>> = c.edges.iter().map(to_bits).collect();

    let greedy = greedy_cover(c);
    let mut forced = Bits::<W>::ZERO;
    for e in &edges {
        if e.count() == 1 {
            forced.or_assign(e);
        }
    }
    let mut s = Search {
        edges: &edges,
        m: edges.len(),
        nodes: 0,
        best: greedy.len(),
        best_set: to_bits(&greedy),
        pinned: None,
        found: Vec::new(),
        cap,
        truncated: false,
    };
    s.run(forced, Bits::ZERO);
    let value = s.best;
    let witness = to_set(&s.best_set);
    assert!(c.is_cover(&witness), "solver produced a non-cover");
    assert_eq!(witness.len(), value);

    let mut all_optima = None;
    if enumerate {
        s.pinned = Some(value);
        s.run(forced, Bits::ZERO);
        let mut list: Vec<VertexSet> = s.found.iter().map(to_set).collect();
        list.sort();
        all_optima = Some(list);
    }
    CoverResult {
        value,
        witness,
        nodes_explored: s.nodes,
        all_optima,
        truncated: s.truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::q_rose;

    fn clutter(n: usize, edges: &[&[usize]]) -> Clutter {
        Clutter::from_edges(n, edges.iter().map(|e| VertexSet::from_iter_n(n, e.iter().copied())).collect()).unwrap()
    }

    /// Exhaustive minimum over all subsets of the ground set.
    fn scan(c: &Clutter) -> usize {
        let g = c.ground.to_vec();
        (0u32..1 << g.len())
            .filter_map(|mask| {
                let s = VertexSet::from_iter_n(c.n, (0..g.len()).filter(|i| mask >> i & 1 == 1).map(|i| g[i]));
                c.is_cover(&s).then(|| s.len())
            })
            .min()
            .unwrap()
    }

    #[test]
    fn p4_clutter_value() {
        let c = clutter(4, &[&[0], &[1, 2], &[3]]);
        let g = greedy_cover(&c);
        assert_eq!(g.len(), 3);
        let r = min_cover(&c, true, DEFAULT_CAP);
        assert_eq!(r.value, 3);
        assert_eq!(r.all_optima.unwrap().len(), 2);
    }

    #[test]
    fn trivial_cases() {
        let c = clutter(3, &[]);
        let r = min_cover(&c, false, 10);
        assert_eq!(r.value, 0);
        assert!(r.witness.is_empty());
        assert_eq!(greedy_cover(&clutter(5, &[&[3, 1]])).to_vec(), vec![1]);
        assert_eq!(greedy_cover(&clutter(5, &[&[3], &[1]])).to_vec(), vec![1, 3]);
    }

    #[test]
    fn clique_optima_are_the_n_minus_one_subsets() {
        for n in 3..8 {
            let c = q_rose(n, 2).unwrap();
            let r = min_cover(&c, true, DEFAULT_CAP);
            assert_eq!(r.value, n - 1);
            let all = r.all_optima.unwrap();
            assert_eq!(all.len(), n);
            assert!(all.iter().all(|s| s.len() == n - 1 && c.is_cover(s)));
        }
    }

    #[test]
    fn q_rose_values() {
        for n in 3..=7 {
            for q in 2..n {
                let c = q_rose(n, q).unwrap();
                assert_eq!(min_cover(&c, false, 0).value, tau_q_rose(n, q).unwrap());
                assert_eq!(scan(&c), n - q + 1);
            }
        }
        assert!(tau_q_rose(4, 4).is_err());
    }

    #[test]
    fn enumeration_cap_sets_flag() {
        let c = q_rose(8, 4).unwrap();
        let r = min_cover(&c, true, 5);
        assert!(r.truncated);
        assert_eq!(r.all_optima.unwrap().len(), 5);
    }

    #[test]
    fn wide_ground_sets_use_larger_masks() {
        // 70 disjoint pairs plus a singleton.
        let n = 141;
        let mut edges: Vec<VertexSet> = (0..70).map(|i| VertexSet::from_iter_n(n, [2 * i, 2 * i + 1])).collect();
        edges.push(VertexSet::singleton(n, 140));
        let c = Clutter::from_edges(n, edges).unwrap();
        assert_eq!(min_cover(&c, false, 0).value, 71);
    }
}
