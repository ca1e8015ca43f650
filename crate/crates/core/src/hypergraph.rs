//! Hypergraphs over a labeled finite vertex universe, and permutations of it.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::set::VertexSet;

/// Dense index of a vertex. Index order is the recorded label order, and every
/// deterministic output of this crate is sorted by it.
pub type VertexId = usize;

pub(crate) fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateVertex(l.clone()));
        }
    }
    Ok(())
}

pub(crate) fn check_in_range(set: &VertexSet, size: usize) -> Result<()> {
    match set.max() {
        Some(index) if index >= size => Err(Error::VertexOutOfRange { index, size }),
        _ => Ok(()),
    }
}

pub(crate) fn resolve_label(labels: &[String], label: &str) -> Result<VertexId> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::UnknownVertex(label.to_string()))
}

/// A finite hypergraph: a set of nonempty edges over a labeled vertex set.
///
/// Edges are kept as a sorted, duplicate-free list. Isolated vertices are
/// allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    labels: Vec<String>,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        check_labels(&labels)?;
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for e in &edges {
            if e.is_empty() {
                return Err(Error::EmptyEdge);
            }
            check_in_range(e, labels.len())?;
        }
        edges.sort();
        edges.dedup();
        Ok(Self { labels, edges })
    }

    /// Convenience constructor from string labels.
    pub fn from_labels<S: AsRef<str>>(vertices: &[S], edges: &[&[S]]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        check_labels(&labels)?;
        let edges = edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|s| resolve_label(&labels, s.as_ref()))
                    .collect::<Result<VertexSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, edges)
    }

    /// The edgeless hypergraph on `labels`.
    pub fn edgeless(labels: Vec<String>) -> Result<Self> {
        Self::new(labels, [])
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: VertexId) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<VertexId> {
        resolve_label(&self.labels, label)
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    fn check_vertex(&self, x: VertexId) -> Result<()> {
        if x < self.labels.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: x,
                size: self.labels.len(),
            })
        }
    }

    /// Number of edges containing `x`.
    pub fn degree(&self, x: VertexId) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(self.edges.iter().filter(|e| e.contains(x)).count())
    }

    /// The edges containing `x`, in edge order.
    pub fn star(&self, x: VertexId) -> Result<Vec<&VertexSet>> {
        self.check_vertex(x)?;
        Ok(self.edges.iter().filter(|e| e.contains(x)).collect())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.labels.len()];
        for e in &self.edges {
            for x in e.iter() {
                deg[x] += 1;
            }
        }
        deg
    }

    /// Maximum vertex degree; 0 for an edgeless hypergraph.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// The hypergraph on the same vertices with edge `index` removed.
    pub fn without_edge(&self, index: usize) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Hypergraph {
            labels: self.labels.clone(),
            edges,
        }
    }

    pub fn labeled(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }
}

/// A bijection of `0..n` onto itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<VertexId>,
}

impl Permutation {
    pub fn new(image: Vec<VertexId>) -> Result<Self> {
        let n = image.len();
        let mut hit = vec![false; n];
        for (x, &y) in image.iter().enumerate() {
            if y >= n {
                return Err(Error::NotBijection(format!(
                    "{x} maps to {y}, outside 0..{n}"
                )));
            }
            if std::mem::replace(&mut hit[y], true) {
                return Err(Error::NotBijection(format!("{y} is hit twice")));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles over `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[VertexId]]) -> Result<Self> {
        let mut image: Vec<VertexId> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, size: n });
                }
                image[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::new(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[VertexId] {
        &self.image
    }

    pub fn at(&self, x: VertexId) -> Result<VertexId> {
        self.image.get(x).copied().ok_or(Error::VertexOutOfRange {
            index: x,
            size: self.image.len(),
        })
    }

    /// Elementwise image of `set`.
    pub fn apply(&self, set: &VertexSet) -> Result<VertexSet> {
        set.iter().map(|x| self.at(x)).collect()
    }

    /// Whether every edge of `h` is disjoint from its image.
    pub fn inverts(&self, h: &Hypergraph) -> Result<bool> {
        if self.len() != h.vertex_count() {
            return Err(Error::DomainMismatch {
                permutation: self.len(),
                vertices: h.vertex_count(),
            });
        }
        for e in h.edges() {
            if self.apply(e)?.intersects(e) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
