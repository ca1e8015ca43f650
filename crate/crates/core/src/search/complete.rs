//! Search for `c(d)`: minimal edge covers of complete graphs.
//!
//! Vertices form a pairwise-intersecting multiset of patterns. A pattern
//! `{j}` may appear twice (the two copies privately cover their own pair
//! through `j`); any other repeated pattern can be merged away, so it
//! appears at most once.

use super::{
    member_cap, members_from_patterns, patterns, subsets_up_to, validate_degree, Budget,
    SearchConfig, SearchOutcome, SeedReport,
};
use crate::canonical::canonical_form;
use crate::cover::{self, CoverFamily, HostGraph};
use crate::error::{Error, Result};
use crate::par;
use crate::set::VertexSet;

/// Vertex-count bound from twin reduction: every singleton pattern twice,
/// every larger pattern once.
pub fn complete_twin_bound(m: usize, d: u32) -> usize {
    m.saturating_mul(2).saturating_add(subsets_up_to(m, 2, d))
}

struct Space {
    full: u32,
    /// `(pattern, multiplicity limit)`.
    cands: Vec<(u32, usize)>,
    vertex_cap: usize,
}

impl Space {
    fn new(m: usize, d: u32, vertex_cap: usize) -> Self {
        let cands = patterns(m, d)
            .into_iter()
            .map(|p| (p, if p.count_ones() == 1 { 2 } else { 1 }))
            .collect();
        Space {
            full: (1u32 << m) - 1,
            cands,
            vertex_cap,
        }
    }

    fn feasible(&self, verts: &[u32]) -> bool {
        verts.len() >= 2 && witnessed(verts) == self.full
    }

    /// Every member needs at least two vertices among those still possible.
    fn promising(&self, verts: &[u32], next: usize) -> bool {
        let mut count = vec![0usize; self.full.count_ones() as usize];
        let mut add = |p: u32, times: usize| {
            let mut bits = p;
            while bits != 0 {
                count[bits.trailing_zeros() as usize] += times;
                bits &= bits - 1;
            }
        };
        for &v in verts {
            add(v, 1);
        }
        for &(p, mult) in &self.cands[next..] {
            if verts.iter().all(|&v| v & p != 0) {
                add(p, mult);
            }
        }
        count.iter().all(|&c| c >= 2)
    }

    /// Depth-first over candidate multiplicities; `visit` returns `true` to stop.
    fn walk(
        &self,
        budget: &Budget,
        verts: &mut Vec<u32>,
        next: usize,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if !budget.tick() {
            return true;
        }
        if self.feasible(verts) && visit(verts) {
            return true;
        }
        if !self.promising(verts, next) {
            return false;
        }
        for k in next..self.cands.len() {
            let (p, mult) = self.cands[k];
            if verts.iter().any(|&v| v & p == 0) {
                continue;
            }
            let base = verts.len();
            for _ in 0..mult {
                if verts.len() >= self.vertex_cap {
                    break;
                }
                verts.push(p);
                if self.walk(budget, verts, k + 1, visit) {
                    verts.truncate(base);
                    return true;
                }
            }
            verts.truncate(base);
        }
        false
    }

    /// Runs `walk` from each first candidate in parallel, keeping the first
    /// hit in candidate order.
    fn first_feasible(&self, budget: &Budget) -> Option<Vec<u32>> {
        par::find_map_first_in(self.cands.len(), |i| {
            let (p, mult) = self.cands[i];
            let mut verts = Vec::new();
            for _ in 0..mult.min(self.vertex_cap) {
                verts.push(p);
                let mut hit = None;
                self.walk(budget, &mut verts, i + 1, &mut |v| {
                    hit = Some(v.to_vec());
                    true
                });
                if hit.is_some() {
                    return hit;
                }
            }
            None
        })
    }
}

fn witnessed(verts: &[u32]) -> u32 {
    let mut w = 0;
    for (i, &p) in verts.iter().enumerate() {
        for &q in &verts[i + 1..] {
            let x = p & q;
            if x.count_ones() == 1 {
                w |= x;
            }
        }
    }
    w
}

fn to_cover(m: usize, verts: &[u32]) -> Result<CoverFamily> {
    let labels = (0..verts.len()).map(|i| format!("v{i}")).collect();
    let c = CoverFamily::new(
        labels,
        HostGraph::Complete { order: verts.len() },
        members_from_patterns(m, verts),
    )?;
    if c.len() != m || !cover::is_minimal_edge_cover(&c) {
        return Err(Error::Contract(
            "search produced a witness that fails verification".into(),
        ));
    }
    Ok(c)
}

fn trim(m: usize, verts: &[u32]) -> Vec<u32> {
    let full = (1u32 << m) - 1;
    let mut verts = verts.to_vec();
    let mut i = 0;
    while i < verts.len() {
        let mut fewer = verts.clone();
        fewer.remove(i);
        if fewer.len() >= 2 && witnessed(&fewer) == full {
            verts = fewer;
        } else {
            i += 1;
        }
    }
    verts
}

/// The all-pairs cover of `K_{d+1}`, a degree-`d` minimal cover.
pub(crate) fn all_pairs_cover(n: usize) -> Result<CoverFamily> {
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let members = (0..n).flat_map(|x| (x + 1..n).map(move |y| VertexSet::from([x, y])));
    CoverFamily::new(labels, HostGraph::Complete { order: n }, members)
}

pub fn search_c(d: u32, cfg: &SearchConfig) -> Result<SearchOutcome<CoverFamily>> {
    validate_degree(d)?;
    let (cap, reaches_bound) = member_cap(d, cfg.max_members)?;
    let vertex_cap = cfg
        .max_part_size
        .unwrap_or_else(|| complete_twin_bound(cap, d));
    if vertex_cap < 2 {
        return Err(Error::Config("vertex cap must be at least 2".into()));
    }
    let budget = Budget::new(cfg.budget);

    let mut seeds = Vec::new();
    let mut seed_witness = None;
    if d <= 12 {
        let seed = all_pairs_cover(d as usize + 1)?;
        let verified = cover::is_minimal_edge_cover(&seed) && seed.max_degree() <= d as usize;
        let within_caps = seed.len() <= cap && seed.host().order() <= vertex_cap;
        seeds.push(SeedReport {
            name: format!("all pairs of K_{}", d + 1),
            size: seed.len(),
            verified,
            within_caps,
        });
        if verified && within_caps {
            seed_witness = Some(seed);
        }
    }

    let mut found = None;
    for m in (1..=cap).rev() {
        if let Some(verts) = Space::new(m, d, vertex_cap).first_feasible(&budget) {
            found = Some(to_cover(m, &trim(m, &verts))?);
            break;
        }
        if budget.exhausted() {
            break;
        }
    }
    let budget_exhausted = budget.exhausted();
    let witness = match (found, seed_witness) {
        (Some(w), Some(s)) if s.len() > w.len() => s,
        (Some(w), _) => w,
        (None, Some(s)) => s,
        (None, None) => return Err(Error::BudgetExhausted),
    };
    let best = witness.len();
    let exhaustive = !budget_exhausted
        && reaches_bound
        && (best == cap || vertex_cap >= complete_twin_bound(cap, d));
    Ok(SearchOutcome {
        best,
        witness,
        exhaustive,
        budget_exhausted,
        max_members: cap,
        max_part_size: vertex_cap,
        seeds,
        nodes: budget.nodes(),
    })
}

/// Every twin-reduced minimal cover of a complete graph with degree `≤ d`,
/// at most `max_members` members and at most `max_vertices` vertices, one
/// per isomorphism class.
pub fn enumerate_complete_covers(
    d: u32,
    max_members: usize,
    max_vertices: usize,
) -> Result<Vec<CoverFamily>> {
    validate_degree(d)?;
    if max_members > crate::canonical::MAX_MEMBERS {
        return Err(Error::Config(format!(
            "enumeration supports at most {} members",
            crate::canonical::MAX_MEMBERS
        )));
    }
    let budget = Budget::new(None);
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for m in 1..=max_members {
        let space = Space::new(m, d, max_vertices);
        let mut found: Vec<Vec<u32>> = Vec::new();
        space.walk(&budget, &mut Vec::new(), 0, &mut |v| {
            found.push(v.to_vec());
            false
        });
        for verts in found {
            let c = to_cover(m, &verts)?;
            if seen.insert(canonical_form(&c)?) {
                out.push(c);
            }
        }
    }
    Ok(out)
}
