//! Exact small-scale searches for `b(d)`, `c(d)` and `i(d)`, and an exact
//! solver for the general restricted covering problem.
//!
//! The searches work on *incidence patterns*: a vertex is described by the
//! set of member indices containing it (a bitmask), and its degree is the
//! pattern size. Vertices with equal patterns ("twins") can be merged
//! without breaking minimality, which bounds the number of vertices worth
//! considering and makes the `d = 2` bipartite search exhaustive.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

mod bipartite;
mod complete;
mod critical;
mod general;

pub use bipartite::{bipartite_twin_bound, search_b};
pub use complete::{complete_twin_bound, enumerate_complete_covers, search_c};
pub use critical::search_i;
pub use general::{
    encode_bipartite_matching, encode_edge_cover_as_general, solve_general_cover,
    GeneralCoverInstance, GeneralSolution, Restriction,
};

/// Caps and budget shared by the three searches.
///
/// Unset caps take defaults: the member cap is the proven upper bound, the
/// part or vertex cap is the twin-reduction bound for that member cap (for
/// the critical search, which has no such bound, `2·edges + 1`).
#[derive(Clone, Debug, Default)]
pub struct SearchConfig {
    pub max_members: Option<usize>,
    pub max_part_size: Option<usize>,
    pub budget: Option<Duration>,
}

impl SearchConfig {
    pub fn with_caps(max_members: usize, max_part_size: usize) -> Self {
        SearchConfig {
            max_members: Some(max_members),
            max_part_size: Some(max_part_size),
            budget: None,
        }
    }

    pub fn budget(mut self, budget: Duration) -> Self {
        self.budget = Some(budget);
        self
    }
}

/// A seed witness checked before it is allowed to stand in for the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedReport {
    pub name: String,
    pub size: usize,
    pub verified: bool,
    pub within_caps: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome<W> {
    pub best: usize,
    pub witness: W,
    /// The caps provably contain every extremal configuration and the search
    /// finished.
    pub exhaustive: bool,
    /// The time budget ran out; `best` comes from whatever was found or
    /// seeded before that.
    pub budget_exhausted: bool,
    pub max_members: usize,
    pub max_part_size: usize,
    pub seeds: Vec<SeedReport>,
    pub nodes: u64,
}

/// Cooperative deadline shared across worker threads.
pub(crate) struct Budget {
    deadline: Option<Instant>,
    stopped: AtomicBool,
    nodes: AtomicU64,
}

impl Budget {
    pub(crate) fn new(budget: Option<Duration>) -> Self {
        Budget {
            deadline: budget.map(|b| Instant::now() + b),
            stopped: AtomicBool::new(false),
            nodes: AtomicU64::new(0),
        }
    }

    /// Counts a search node; returns `false` once the deadline has passed.
    pub(crate) fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        if n.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.stopped.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Largest member count the pattern searches accept.
pub const MAX_SEARCH_MEMBERS: usize = 24;

pub(crate) fn validate_degree(d: u32) -> Result<()> {
    if d == 0 {
        Err(Error::Domain("degree must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// The member cap, defaulting to the proven upper bound (clamped to
/// [`MAX_SEARCH_MEMBERS`]) and never above it. The flag says whether the cap
/// reaches the bound.
pub(crate) fn member_cap(d: u32, requested: Option<usize>) -> Result<(usize, bool)> {
    let bound = crate::bounds::upper_b(d as u64)?;
    let bound_small = usize::try_from(&bound).ok();
    let cap = match (requested, bound_small) {
        (Some(0), _) => return Err(Error::Config("member cap must be positive".into())),
        (Some(r), Some(b)) if r > b => {
            return Err(Error::Config(format!(
                "member cap {r} exceeds the upper bound {b}"
            )));
        }
        (Some(r), _) => r,
        (None, Some(b)) => b.min(MAX_SEARCH_MEMBERS),
        (None, None) => MAX_SEARCH_MEMBERS,
    };
    if cap > MAX_SEARCH_MEMBERS {
        return Err(Error::Config(format!(
            "member cap {cap} is beyond the supported {MAX_SEARCH_MEMBERS}; pass a smaller cap"
        )));
    }
    let reaches_bound = bound_small == Some(cap);
    Ok((cap, reaches_bound))
}

/// All nonempty subsets of `0..m` with at most `d` elements, as masks in
/// increasing numeric order.
pub(crate) fn patterns(m: usize, d: u32) -> Vec<u32> {
    (1u32..1 << m).filter(|p| p.count_ones() <= d).collect()
}

/// `Σ_{j=lo..=d} C(m, j)`, saturating.
pub(crate) fn subsets_up_to(m: usize, lo: u32, d: u32) -> usize {
    (lo..=d)
        .map(|j| crate::bounds::binomial(m as u64, j as u64))
        .fold(0usize, |acc, b| {
            acc.saturating_add(usize::try_from(&b).unwrap_or(usize::MAX))
        })
}

/// Members `0..m` read off vertex patterns: member `j` holds vertex `v`
/// when bit `j` of `pattern[v]` is set.
pub(crate) fn members_from_patterns(m: usize, pattern: &[u32]) -> Vec<crate::set::VertexSet> {
    (0..m)
        .map(|j| {
            pattern
                .iter()
                .enumerate()
                .filter(|(_, &p)| p >> j & 1 == 1)
                .map(|(v, _)| v)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_counts() {
        assert_eq!(patterns(4, 2).len(), 10);
        assert_eq!(subsets_up_to(4, 1, 2), 10);
        assert_eq!(subsets_up_to(4, 2, 2), 6);
        assert_eq!(
            members_from_patterns(2, &[1, 3, 2]),
            vec![[0, 1].into(), [1, 2].into()]
        );
    }

    #[test]
    fn caps_are_validated() {
        assert_eq!(member_cap(2, None).unwrap(), (4, true));
        assert_eq!(member_cap(2, Some(3)).unwrap(), (3, false));
        assert!(matches!(member_cap(2, Some(5)), Err(Error::Config(_))));
        assert!(matches!(member_cap(2, Some(0)), Err(Error::Config(_))));
        assert_eq!(member_cap(4, None).unwrap(), (MAX_SEARCH_MEMBERS, false));
    }

    #[test]
    fn budget_expires() {
        let b = Budget::new(Some(Duration::ZERO));
        assert!(!b.tick());
        assert!(b.exhausted());
        let b = Budget::new(None);
        assert!((0..5000).all(|_| b.tick()));
    }
}
