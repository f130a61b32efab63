use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of vertex indices backed by a fixed-width bitset.
///
/// The width is the vertex count of the owning graph. Set operations between
/// sets of different widths grow the result to the larger width. Equality,
/// hashing and ordering look at the members only, never at the width.
#[derive(Clone, Default)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert_range(..);
        VertexSet(b)
    }

    pub fn from_iter_n<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::empty(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        Self::from_iter_n(n, [v])
    }

    /// Width of the underlying bitset.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, v: usize) {
        if v >= self.0.len() {
            self.0.grow(v + 1);
        }
        self.0.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.0.len() {
            self.0.set(v, false);
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        if other.width() > out.width() {
            out.0.grow(other.width());
        }
        out.0.symmetric_difference_with(&other.0);
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.0.intersection_count(&other.0)
    }

    /// Complement within `0..width`.
    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        out.0.toggle_range(..);
        out
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        if self.width() == other.width() {
            self.0 == other.0
        } else {
            self.iter().eq(other.iter())
        }
    }
}

impl Eq for VertexSet {}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for v in self.iter() {
            v.hash(state);
        }
    }
}

impl Ord for VertexSet {
    /// Orders by cardinality, then lexicographically by the sorted member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        let width = members.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_iter_n(width, members))
    }
}
