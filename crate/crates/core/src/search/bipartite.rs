//! Search for `b(d)`: minimal edge covers of complete bipartite graphs.
//!
//! For `m` members, part 1 is a set `P1` of distinct patterns and part 2 is
//! a set `P2` of distinct patterns, every `p ∈ P1` meeting every `q ∈ P2`
//! (coverage). Member `j` needs a witness pair with `p ∩ q = {j}`
//! (a private edge). Given `P1`, the best `P2` is every pattern meeting all
//! of `P1`, so the search runs over `P1` only.

use super::{
    member_cap, members_from_patterns, patterns, subsets_up_to, validate_degree, Budget,
    SearchConfig, SearchOutcome, SeedReport,
};
use crate::constructions::lower_bound_cover;
use crate::cover::{self, CoverFamily, HostGraph};
use crate::error::{Error, Result};
use crate::par;

/// Part-size bound from twin reduction: distinct nonempty patterns of size
/// at most `d` over `m` members.
pub fn bipartite_twin_bound(m: usize, d: u32) -> usize {
    subsets_up_to(m, 1, d)
}

pub fn search_b(d: u32, cfg: &SearchConfig) -> Result<SearchOutcome<CoverFamily>> {
    validate_degree(d)?;
    let (cap, reaches_bound) = member_cap(d, cfg.max_members)?;
    let part_cap = cfg
        .max_part_size
        .unwrap_or_else(|| bipartite_twin_bound(cap, d));
    if part_cap == 0 {
        return Err(Error::Config("part cap must be positive".into()));
    }
    let budget = Budget::new(cfg.budget);

    let mut seeds = Vec::new();
    let mut seed_witness = None;
    if d <= 6 {
        let seed = lower_bound_cover(d)?;
        let verified = cover::is_minimal_edge_cover(&seed)
            && cover::part_degrees(&seed)? == (d as usize, d as usize);
        let side = 1usize << (d - 1);
        let within_caps = seed.len() <= cap && side <= part_cap;
        seeds.push(SeedReport {
            name: format!("lower_bound_cover({d})"),
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
        if let Some((p1, p2)) = find_for_members(m, d, part_cap, &budget) {
            found = Some((m, p1, p2));
            break;
        }
        if budget.exhausted() {
            break;
        }
    }
    let budget_exhausted = budget.exhausted();

    let (best, witness) = match (found, seed_witness) {
        (Some((m, p1, p2)), seed) => {
            let w = witness_cover(m, &p1, &p2)?;
            match seed {
                Some(s) if s.len() > m => (s.len(), s),
                _ => (m, w),
            }
        }
        (None, Some(s)) => (s.len(), s),
        (None, None) => return Err(Error::BudgetExhausted),
    };
    let exhaustive = !budget_exhausted
        && reaches_bound
        && (best == cap || part_cap >= bipartite_twin_bound(cap, d));
    Ok(SearchOutcome {
        best,
        witness,
        exhaustive,
        budget_exhausted,
        max_members: cap,
        max_part_size: part_cap,
        seeds,
        nodes: budget.nodes(),
    })
}

/// Union of the singleton intersections `p ∩ q` over the two parts.
fn witnessed(p1: &[u32], p2: &[u32]) -> u32 {
    let mut w = 0;
    for &p in p1 {
        for &q in p2 {
            let x = p & q;
            if x.count_ones() == 1 {
                w |= x;
            }
        }
    }
    w
}

fn find_for_members(
    m: usize,
    d: u32,
    part_cap: usize,
    budget: &Budget,
) -> Option<(Vec<u32>, Vec<u32>)> {
    let pats = patterns(m, d);
    let full = (1u32 << m) - 1;
    par::find_map_first_in(pats.len(), |i| {
        let p = pats[i];
        let cross: Vec<u32> = pats.iter().copied().filter(|&q| q & p != 0).collect();
        let mut p1 = vec![p];
        extend(&pats, full, part_cap, budget, &mut p1, &cross, i + 1)
    })
}

fn extend(
    pats: &[u32],
    full: u32,
    part_cap: usize,
    budget: &Budget,
    p1: &mut Vec<u32>,
    cross: &[u32],
    next: usize,
) -> Option<(Vec<u32>, Vec<u32>)> {
    if !budget.tick() {
        return None;
    }
    if witnessed(p1, cross) == full {
        if let Some(p2) = select_part2(p1, cross, full, part_cap) {
            return Some((p1.clone(), p2));
        }
    }
    // cross only shrinks, so a member absent from it can never be witnessed
    let reachable = cross.iter().fold(0, |acc, &q| acc | q);
    if reachable != full || p1.len() >= part_cap {
        return None;
    }
    for k in next..pats.len() {
        let p = pats[k];
        let narrowed: Vec<u32> = cross.iter().copied().filter(|&q| q & p != 0).collect();
        if narrowed.is_empty() {
            continue;
        }
        p1.push(p);
        let hit = extend(pats, full, part_cap, budget, p1, &narrowed, k + 1);
        p1.pop();
        if hit.is_some() {
            return hit;
        }
        if budget.exhausted() {
            return None;
        }
    }
    None
}

/// At most `part_cap` patterns of `cross` that still witness every member.
fn select_part2(p1: &[u32], cross: &[u32], full: u32, part_cap: usize) -> Option<Vec<u32>> {
    if cross.len() <= part_cap {
        return Some(cross.to_vec());
    }
    let gains: Vec<u32> = cross.iter().map(|&q| witnessed(p1, &[q])).collect();
    fn pick(gains: &[u32], covered: u32, full: u32, left: usize, chosen: &mut Vec<usize>) -> bool {
        if covered == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        let j = (full & !covered).trailing_zeros();
        for (i, &g) in gains.iter().enumerate() {
            if g >> j & 1 == 1 {
                chosen.push(i);
                if pick(gains, covered | g, full, left - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    pick(&gains, 0, full, part_cap, &mut chosen).then(|| chosen.iter().map(|&i| cross[i]).collect())
}

/// Drops vertices while every member keeps a witness, then builds and
/// re-verifies the cover.
fn witness_cover(m: usize, p1: &[u32], p2: &[u32]) -> Result<CoverFamily> {
    let full = (1u32 << m) - 1;
    let (mut p1, mut p2) = (p1.to_vec(), p2.to_vec());
    let mut changed = true;
    while changed {
        changed = false;
        for side in 0..2 {
            let mut i = 0;
            while i < if side == 0 { p1.len() } else { p2.len() } {
                let (mut a, mut b) = (p1.clone(), p2.clone());
                if side == 0 {
                    a.remove(i)
                } else {
                    b.remove(i)
                };
                if !a.is_empty() && !b.is_empty() && witnessed(&a, &b) == full {
                    (p1, p2) = (a, b);
                    changed = true;
                } else {
                    i += 1;
                }
            }
        }
    }
    let mut labels: Vec<String> = (0..p1.len()).map(|i| format!("x{i}")).collect();
    labels.extend((0..p2.len()).map(|i| format!("y{i}")));
    let all: Vec<u32> = p1.iter().chain(&p2).copied().collect();
    let c = CoverFamily::new(
        labels,
        HostGraph::CompleteBipartite {
            left: p1.len(),
            right: p2.len(),
        },
        members_from_patterns(m, &all),
    )?;
    if c.len() != m || !cover::is_minimal_edge_cover(&c) {
        return Err(Error::Contract(
            "search produced a witness that fails verification".into(),
        ));
    }
    Ok(c)
}
