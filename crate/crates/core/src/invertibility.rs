//! Invertibility through perfect matchings of the compatibility graph.
//!
//! The compatibility graph `G(H)` has a left copy `ι1(x)` and a right copy
//! `ι2(y)` of every vertex, with `ι1(x) ~ ι2(y)` iff no edge contains both
//! `x` and `y`. The case `x = y` is read literally: `ι1(x) ~ ι2(x)` iff `x`
//! lies in no edge. A permutation inverts `H` iff its graph
//! `{ι1(x) ι2(π(x))}` is a perfect matching of `G(H)`.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::hypergraph::{Hypergraph, Permutation, VertexId};
use crate::matching::{self, BipartiteGraph, Matching};
use crate::par;
use crate::set::VertexSet;

/// `G(H)`: left vertex `x` is `ι1(x)`, right vertex `y` is `ι2(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteCompatibilityGraph {
    graph: BipartiteGraph,
}

impl BipartiteCompatibilityGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.left_count()
    }

    pub fn adjacent(&self, x: VertexId, y: VertexId) -> bool {
        self.graph.has_edge(x, y)
    }

    /// Right copies adjacent to `ι1(x)`.
    pub fn neighbors(&self, x: VertexId) -> &[VertexId] {
        self.graph.neighbors(x)
    }

    /// `N(ι1(U))` as a set of right-copy indices.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|x| self.neighbors(x).iter().copied())
            .collect()
    }

    pub fn as_bipartite(&self) -> &BipartiteGraph {
        &self.graph
    }
}

pub fn build_compatibility_graph(h: &Hypergraph) -> BipartiteCompatibilityGraph {
    let n = h.vertex_count();
    // blocked[x] = union of the edges through x
    let mut blocked = vec![FixedBitSet::with_capacity(n); n];
    for e in h.edges() {
        for x in e.iter() {
            for y in e.iter() {
                blocked[x].insert(y);
            }
        }
    }
    let adjacency = blocked
        .iter()
        .map(|b| b.zeroes().collect::<Vec<_>>())
        .collect();
    BipartiteCompatibilityGraph {
        graph: BipartiteGraph::new(n, adjacency),
    }
}

pub fn maximum_matching(g: &BipartiteCompatibilityGraph) -> Matching {
    matching::maximum_matching(&g.graph)
}

pub fn is_invertible(h: &Hypergraph) -> bool {
    maximum_matching(&build_compatibility_graph(h)).size() == h.vertex_count()
}

/// An inverting permutation read off a perfect matching of `G(H)`, or `None`.
pub fn find_inverting_permutation(h: &Hypergraph) -> Option<Permutation> {
    let m = maximum_matching(&build_compatibility_graph(h));
    if !m.is_perfect() {
        return None;
    }
    let image = (0..h.vertex_count())
        .map(|x| m.mate_of_left(x).unwrap())
        .collect();
    let p = Permutation::new(image).expect("perfect matching induces a bijection");
    debug_assert!(p.inverts(h).unwrap());
    Some(p)
}

/// A Hall violator of `G(H)`: `|N(ι1(U))| < |U|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencySet {
    pub set: VertexSet,
    pub neighborhood: VertexSet,
}

/// The canonical Hall violator: left vertices reachable by alternating paths
/// from the free left vertices of the deterministic maximum matching.
/// `None` iff `h` is invertible.
pub fn find_deficiency_set(h: &Hypergraph) -> Option<DeficiencySet> {
    let g = build_compatibility_graph(h);
    let m = maximum_matching(&g);
    matching::hall_violator(&g.graph, &m).map(|hv| DeficiencySet {
        set: hv.left.into(),
        neighborhood: hv.neighborhood.into(),
    })
}

/// Outcome of a criticality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Criticality {
    Invertible,
    Critical,
    /// Not invertible, and removing `witness_edge` keeps it non-invertible.
    NotCritical {
        witness_edge: usize,
    },
}

/// Not invertible, but invertible after removing any single edge. The
/// per-edge checks run in parallel; the witness is the first such edge.
pub fn criticality(h: &Hypergraph) -> Criticality {
    if is_invertible(h) {
        return Criticality::Invertible;
    }
    match par::find_map_first_in(h.edge_count(), |i| {
        (!is_invertible(&h.without_edge(i))).then_some(i)
    }) {
        Some(witness_edge) => Criticality::NotCritical { witness_edge },
        None => Criticality::Critical,
    }
}

pub fn is_invertibility_critical(h: &Hypergraph) -> bool {
    criticality(h) == Criticality::Critical
}
