use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hypergraph::VertexId;

/// A finite set of dense vertex indices, stored sorted and deduplicated.
///
/// Ordering is lexicographic on the sorted elements, which gives families of
/// sets a deterministic canonical order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(x: VertexId) -> Self {
        Self(vec![x])
    }

    /// Builds a set from `0..n`.
    pub fn range(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn first(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<VertexId> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, x: VertexId) -> bool {
        match self.0.binary_search(&x) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, x);
                true
            }
        }
    }

    pub fn remove(&mut self, x: VertexId) -> bool {
        match self.0.binary_search(&x) {
            Ok(at) => {
                self.0.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&x| other.contains(x)).collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&x| !other.contains(x)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// Maps every element through `f`; the result is re-sorted.
    pub fn map(&self, f: impl FnMut(VertexId) -> VertexId) -> VertexSet {
        self.iter().map(f).collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut v: Vec<VertexId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(v: Vec<VertexId>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[VertexId; N]> for VertexSet {
    fn from(v: [VertexId; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<VertexId>::deserialize(d).map(VertexSet::from)
    }
}
