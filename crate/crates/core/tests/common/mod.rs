#![allow(dead_code)]

use hyperinv::{Hypergraph, VertexSet};
use itertools::Itertools;
use rand::Rng;

/// A random hypergraph with `1..=max_vertices` vertices and `0..=max_edges`
/// nonempty edges.
pub fn random_hypergraph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> Hypergraph {
    let n = rng.random_range(1..=max_vertices);
    let edges = rng.random_range(0..=max_edges);
    let density = rng.random_range(0.15..0.6);
    let sets = (0..edges).map(|_| {
        let mut e: VertexSet = (0..n).filter(|_| rng.random_bool(density)).collect();
        if e.is_empty() {
            e.insert(rng.random_range(0..n));
        }
        e
    });
    let sets: Vec<VertexSet> = sets.collect();
    Hypergraph::new((0..n).map(|i| format!("v{i}")).collect(), sets).unwrap()
}

/// Tries every permutation of the vertex set.
pub fn brute_force_invertible(h: &Hypergraph) -> bool {
    let n = h.vertex_count();
    (0..n).permutations(n).any(|p| {
        h.edges()
            .iter()
            .all(|e| e.iter().all(|x| !e.contains(p[x])))
    })
}

/// Removes each edge in turn and re-checks by brute force.
pub fn brute_force_critical(h: &Hypergraph) -> bool {
    !brute_force_invertible(h)
        && (0..h.edge_count()).all(|i| brute_force_invertible(&h.without_edge(i)))
}

/// Every host pair checked directly against the member list.
pub fn naive_minimal_cover(c: &hyperinv::CoverFamily) -> bool {
    let host = c.host();
    let n = host.order();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| host.adjacent(x, y))
        .collect();
    let holders = |x: usize, y: usize| {
        c.members()
            .iter()
            .filter(|m| m.contains(x) && m.contains(y))
            .count()
    };
    pairs.iter().all(|&(x, y)| holders(x, y) >= 1)
        && c.members().iter().all(|m| {
            pairs
                .iter()
                .any(|&(x, y)| m.contains(x) && m.contains(y) && holders(x, y) == 1)
        })
}

/// A random minimal edge cover of `K_{p,q}`: random members, topped up with
/// the uncovered pairs, then redundant members dropped in random order.
pub fn random_minimal_bipartite_cover(
    rng: &mut impl Rng,
    max_side: usize,
    max_random: usize,
) -> hyperinv::CoverFamily {
    use rand::seq::SliceRandom;
    let p = rng.random_range(1..=max_side);
    let q = rng.random_range(1..=max_side);
    let n = p + q;
    let mut members: Vec<VertexSet> = (0..rng.random_range(0..=max_random))
        .map(|_| {
            (0..n)
                .filter(|_| rng.random_bool(0.4))
                .collect::<VertexSet>()
        })
        .filter(|m| m.iter().any(|x| x < p) && m.iter().any(|x| x >= p))
        .collect();
    for x in 0..p {
        for y in p..n {
            if !members.iter().any(|m| m.contains(x) && m.contains(y)) {
                members.push([x, y].into());
            }
        }
    }
    members.sort();
    members.dedup();
    members.shuffle(rng);
    let covers = |ms: &[VertexSet]| {
        (0..p).all(|x| (p..n).all(|y| ms.iter().any(|m| m.contains(x) && m.contains(y))))
    };
    let mut i = 0;
    while i < members.len() {
        let mut rest = members.clone();
        rest.remove(i);
        if covers(&rest) {
            members = rest;
        } else {
            i += 1;
        }
    }
    let labels = (0..p)
        .map(|i| format!("a{i}"))
        .chain((0..q).map(|i| format!("b{i}")))
        .collect();
    hyperinv::CoverFamily::new(
        labels,
        hyperinv::HostGraph::CompleteBipartite { left: p, right: q },
        members,
    )
    .unwrap()
}
