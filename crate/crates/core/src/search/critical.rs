//! Search for `i(d)`: invertibility-critical hypergraphs.
//!
//! A hypergraph with `m` edges is a multiset of vertex patterns (the empty
//! pattern is an isolated vertex). Two vertices are compatible exactly when
//! their patterns are disjoint, so invertibility is a perfect matching on
//! the pattern multiset. No bound on the number of isolated vertices is
//! known, so this search is never reported as exhaustive.

use super::complete::all_pairs_cover;
use super::{
    member_cap, members_from_patterns, patterns, validate_degree, Budget, SearchConfig,
    SearchOutcome, SeedReport,
};
use crate::constructions::cover_to_critical;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::invertibility;
use crate::matching::{maximum_matching, BipartiteGraph};
use crate::par;

fn invertible(verts: &[u32], drop: u32) -> bool {
    let adjacency = verts
        .iter()
        .map(|&p| {
            (0..verts.len())
                .filter(|&y| p & verts[y] & !drop == 0)
                .collect()
        })
        .collect();
    maximum_matching(&BipartiteGraph::new(verts.len(), adjacency)).is_perfect()
}

fn is_critical(m: usize, verts: &[u32]) -> bool {
    let present = verts.iter().fold(0, |acc, &p| acc | p);
    if present != (1u32 << m) - 1 {
        return false;
    }
    // edges must be distinct sets of vertices
    for j in 0..m {
        for k in j + 1..m {
            if verts.iter().all(|&p| (p >> j & 1) == (p >> k & 1)) {
                return false;
            }
        }
    }
    !invertible(verts, 0) && (0..m).all(|j| invertible(verts, 1 << j))
}

struct Space {
    m: usize,
    types: Vec<u32>,
    vertex_cap: usize,
}

impl Space {
    /// Assigns counts to `types[t..]`; `counts` holds the earlier ones.
    fn walk(&self, budget: &Budget, verts: &mut Vec<u32>, t: usize) -> Option<Vec<u32>> {
        if !budget.tick() {
            return None;
        }
        if t == self.types.len() {
            return is_critical(self.m, verts).then(|| verts.clone());
        }
        let base = verts.len();
        let mut hit = self.walk(budget, verts, t + 1);
        while hit.is_none() && verts.len() < self.vertex_cap && !budget.exhausted() {
            verts.push(self.types[t]);
            hit = self.walk(budget, verts, t + 1);
        }
        verts.truncate(base);
        hit
    }

    fn first_critical(&self, budget: &Budget) -> Option<Vec<u32>> {
        // split on the counts of the first two pattern types
        let splits: Vec<(usize, usize)> = (0..=self.vertex_cap)
            .flat_map(|a| (0..=self.vertex_cap - a).map(move |b| (a, b)))
            .collect();
        par::find_map_first_in(splits.len(), |s| {
            let (a, b) = splits[s];
            let mut verts = vec![self.types[0]; a];
            verts.extend(std::iter::repeat_n(self.types[1], b));
            self.walk(budget, &mut verts, 2)
        })
    }
}

pub fn search_i(d: u32, cfg: &SearchConfig) -> Result<SearchOutcome<Hypergraph>> {
    validate_degree(d)?;
    let (cap, _) = member_cap(d, cfg.max_members)?;
    let vertex_cap = cfg.max_part_size.unwrap_or(2 * cap + 1);
    if vertex_cap == 0 {
        return Err(Error::Config("vertex cap must be positive".into()));
    }
    let budget = Budget::new(cfg.budget);

    let mut seeds = Vec::new();
    let mut seed_witness = None;
    if d <= 12 {
        let seed = cover_to_critical(&all_pairs_cover(d as usize + 1)?)?;
        let verified =
            invertibility::is_invertibility_critical(&seed) && seed.max_degree() <= d as usize;
        let within_caps = seed.edge_count() <= cap && seed.vertex_count() <= vertex_cap;
        seeds.push(SeedReport {
            name: format!("padded all-pairs cover of K_{}", d + 1),
            size: seed.edge_count(),
            verified,
            within_caps,
        });
        if verified && within_caps {
            seed_witness = Some(seed);
        }
    }

    let mut found = None;
    for m in (1..=cap).rev() {
        let mut types = vec![0];
        types.extend(patterns(m, d));
        let space = Space {
            m,
            types,
            vertex_cap,
        };
        if let Some(verts) = space.first_critical(&budget) {
            let labels = (0..verts.len()).map(|i| format!("v{i}")).collect();
            let h = Hypergraph::new(labels, members_from_patterns(m, &verts))?;
            if h.edge_count() != m || !invertibility::is_invertibility_critical(&h) {
                return Err(Error::Contract(
                    "search produced a witness that fails verification".into(),
                ));
            }
            found = Some(h);
            break;
        }
        if budget.exhausted() {
            break;
        }
    }
    let budget_exhausted = budget.exhausted();
    let witness = match (found, seed_witness) {
        (Some(w), Some(s)) if s.edge_count() > w.edge_count() => s,
        (Some(w), _) => w,
        (None, Some(s)) => s,
        (None, None) => return Err(Error::BudgetExhausted),
    };
    Ok(SearchOutcome {
        best: witness.edge_count(),
        witness,
        exhaustive: false,
        budget_exhausted,
        max_members: cap,
        max_part_size: vertex_cap,
        seeds,
        nodes: budget.nodes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one() {
        let out = search_i(1, &SearchConfig::default()).unwrap();
        assert_eq!(out.best, 1);
        assert!(!out.exhaustive);
    }

    #[test]
    fn pattern_criticality_matches_hypergraph_check() {
        // triangle edges {0,1}, {1,2}, {0,2} on vertices with two pads
        let verts = [0b101, 0b011, 0b110, 0, 0];
        assert!(is_critical(3, &verts));
        assert!(is_critical(3, &verts[..4]));
        assert!(!is_critical(3, &verts[..3]));
    }

    #[test]
    fn degree_two_within_caps() {
        let out = search_i(2, &SearchConfig::with_caps(4, 9)).unwrap();
        assert_eq!(out.best, 3);
        assert!(!out.exhaustive);
        assert!(out.seeds.iter().all(|s| s.verified));
    }
}
