//! Maximum cardinality bipartite matching (Hopcroft–Karp) and Hall violators.
//!
//! Adjacency lists are kept sorted and every search scans them in order, so
//! the returned matching is a deterministic function of the graph.

use std::collections::VecDeque;

/// A bipartite graph given by forward adjacency lists from the left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    right_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// `adjacency[l]` lists the right neighbors of left vertex `l`. Lists are
    /// sorted and deduplicated; out-of-range right indices panic.
    pub fn new(right_count: usize, mut adjacency: Vec<Vec<usize>>) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            assert!(
                list.iter().all(|&r| r < right_count),
                "right vertex out of range"
            );
        }
        Self {
            right_count,
            adjacency,
        }
    }

    pub fn left_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adjacency[left]
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.adjacency[left].binary_search(&right).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

/// A matching stored from both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(left_count: usize, right_count: usize) -> Self {
        Self {
            left_mate: vec![None; left_count],
            right_mate: vec![None; right_count],
        }
    }

    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    pub fn mate_of_left(&self, left: usize) -> Option<usize> {
        self.left_mate[left]
    }

    pub fn mate_of_right(&self, right: usize) -> Option<usize> {
        self.right_mate[right]
    }

    /// Matched pairs `(left, right)` in left order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.left_mate.len() == self.right_mate.len() && self.left_mate.iter().all(Option::is_some)
    }

    /// Checks the matching invariants against `g`: consistent mates and only
    /// edges of `g`.
    pub fn is_valid_in(&self, g: &BipartiteGraph) -> bool {
        self.left_mate.len() == g.left_count()
            && self.right_mate.len() == g.right_count()
            && self.left_mate.iter().enumerate().all(|(l, r)| match r {
                Some(r) => g.has_edge(l, *r) && self.right_mate[*r] == Some(l),
                None => true,
            })
            && self.right_mate.iter().enumerate().all(|(r, l)| match l {
                Some(l) => self.left_mate[*l] == Some(r),
                None => true,
            })
    }
}

const UNREACHED: u32 = u32::MAX;

/// Hopcroft–Karp maximum matching, O(E·√V).
pub fn maximum_matching(g: &BipartiteGraph) -> Matching {
    let mut m = Matching::empty(g.left_count(), g.right_count());
    let mut dist = vec![UNREACHED; g.left_count()];
    let mut cursor = vec![0usize; g.left_count()];
    loop {
        if !layer(g, &m, &mut dist) {
            break;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        let mut grew = false;
        for l in 0..g.left_count() {
            if m.left_mate[l].is_none() && augment(g, &mut m, &dist, &mut cursor, l) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    m
}

// BFS from free left vertices; returns whether some free right vertex is reachable.
fn layer(g: &BipartiteGraph, m: &Matching, dist: &mut [u32]) -> bool {
    let mut queue = VecDeque::new();
    for (l, d) in dist.iter_mut().enumerate() {
        if m.left_mate[l].is_none() {
            *d = 0;
            queue.push_back(l);
        } else {
            *d = UNREACHED;
        }
    }
    let mut found = false;
    while let Some(l) = queue.pop_front() {
        for &r in g.neighbors(l) {
            match m.right_mate[r] {
                None => found = true,
                Some(next) if dist[next] == UNREACHED => {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
                Some(_) => {}
            }
        }
    }
    found
}

fn augment(
    g: &BipartiteGraph,
    m: &mut Matching,
    dist: &[u32],
    cursor: &mut [usize],
    l: usize,
) -> bool {
    while cursor[l] < g.neighbors(l).len() {
        let r = g.neighbors(l)[cursor[l]];
        cursor[l] += 1;
        let ok = match m.right_mate[r] {
            None => true,
            Some(next) => dist[next] == dist[l] + 1 && augment(g, m, dist, cursor, next),
        };
        if ok {
            m.left_mate[l] = Some(r);
            m.right_mate[r] = Some(l);
            return true;
        }
    }
    false
}

/// A set of left vertices with fewer neighbors than members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallViolator {
    pub left: Vec<usize>,
    pub neighborhood: Vec<usize>,
}

/// Closure of the free left vertices under alternating paths of a maximum
/// matching `m`. Empty when `m` saturates the left side.
///
/// Every right vertex reached is matched (otherwise `m` would not be
/// maximum), so `|neighborhood| = |left| − #free` and the set violates Hall's
/// condition whenever some left vertex is free.
pub fn hall_violator(g: &BipartiteGraph, m: &Matching) -> Option<HallViolator> {
    let mut left_seen = vec![false; g.left_count()];
    let mut right_seen = vec![false; g.right_count()];
    let mut queue: VecDeque<usize> = (0..g.left_count())
        .filter(|&l| m.left_mate[l].is_none())
        .collect();
    if queue.is_empty() {
        return None;
    }
    for &l in &queue {
        left_seen[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in g.neighbors(l) {
            if std::mem::replace(&mut right_seen[r], true) {
                continue;
            }
            let next = m.right_mate[r]
                .expect("alternating search reached a free right vertex: matching not maximum");
            if !std::mem::replace(&mut left_seen[next], true) {
                queue.push_back(next);
            }
        }
    }
    let collect = |seen: &[bool]| {
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect::<Vec<_>>()
    };
    Some(HallViolator {
        left: collect(&left_seen),
        neighborhood: collect(&right_seen),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let empty = BipartiteGraph::new(2, vec![vec![], vec![]]);
        assert_eq!(maximum_matching(&empty).size(), 0);

        let complete = BipartiteGraph::new(3, vec![vec![0, 1, 2]; 3]);
        let m = maximum_matching(&complete);
        assert_eq!(m.size(), 3);
        assert!(m.is_perfect());
        assert!(m.is_valid_in(&complete));

        let shared = BipartiteGraph::new(2, vec![vec![0], vec![0]]);
        let m = maximum_matching(&shared);
        assert_eq!(m.size(), 1);
        let hv = hall_violator(&shared, &m).unwrap();
        assert_eq!(hv.left, vec![0, 1]);
        assert_eq!(hv.neighborhood, vec![0]);
    }

    #[test]
    fn needs_augmenting_paths() {
        // Greedy would match 0-0 and leave 1 stuck.
        let g = BipartiteGraph::new(2, vec![vec![0, 1], vec![0]]);
        let m = maximum_matching(&g);
        assert_eq!(m.pairs(), vec![(0, 1), (1, 0)]);
        assert!(hall_violator(&g, &m).is_none());
    }
}
