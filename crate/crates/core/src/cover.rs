//! Edge covers of implicit complete and complete bipartite host graphs.
//!
//! Host edges are never materialized. Coverage of a host pair `{x, y}` is
//! read from the member-incidence bitsets of `x` and `y`, so a check costs
//! one bitset intersection per pair.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::hypergraph::{check_in_range, check_labels, resolve_label, Hypergraph, VertexId};
use crate::par;
use crate::set::VertexSet;

/// The host graph whose edges a family must cover.
///
/// Vertices are `0..order()`. For the bipartite host, part 1 is `0..left` and
/// part 2 is `left..left + right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HostGraph {
    Complete { order: usize },
    CompleteBipartite { left: usize, right: usize },
}

impl HostGraph {
    pub fn order(&self) -> usize {
        match *self {
            HostGraph::Complete { order } => order,
            HostGraph::CompleteBipartite { left, right } => left + right,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self, HostGraph::CompleteBipartite { .. })
    }

    /// Whether `{x, y}` is a host edge.
    pub fn adjacent(&self, x: VertexId, y: VertexId) -> bool {
        match *self {
            HostGraph::Complete { .. } => x != y,
            HostGraph::CompleteBipartite { left, .. } => (x < left) != (y < left),
        }
    }

    pub fn in_part1(&self, x: VertexId) -> bool {
        match *self {
            HostGraph::Complete { .. } => true,
            HostGraph::CompleteBipartite { left, .. } => x < left,
        }
    }

    pub fn part1(&self) -> VertexSet {
        match *self {
            HostGraph::Complete { order } => VertexSet::range(order),
            HostGraph::CompleteBipartite { left, .. } => VertexSet::range(left),
        }
    }

    pub fn part2(&self) -> VertexSet {
        match *self {
            HostGraph::Complete { .. } => VertexSet::new(),
            HostGraph::CompleteBipartite { left, right } => (left..left + right).collect(),
        }
    }

    /// The host edges `{x, y}` with `x < y` that contain `x` as the smaller
    /// (complete) or part-1 (bipartite) endpoint.
    fn row(&self, x: VertexId) -> std::ops::Range<VertexId> {
        match *self {
            HostGraph::Complete { order } => (x + 1)..order,
            HostGraph::CompleteBipartite { left, right } => {
                if x < left {
                    left..left + right
                } else {
                    0..0
                }
            }
        }
    }

    fn row_count(&self) -> usize {
        match *self {
            HostGraph::Complete { order } => order,
            HostGraph::CompleteBipartite { left, .. } => left,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            HostGraph::Complete { order: 0 } => {
                Err(Error::InvalidHost("complete host needs a vertex".into()))
            }
            HostGraph::CompleteBipartite { left, right } if left == 0 || right == 0 => Err(
                Error::InvalidHost("bipartite parts must be nonempty".into()),
            ),
            _ => Ok(()),
        }
    }
}

/// A family of vertex subsets read as an edge cover of `host`.
///
/// Members are nonempty and kept sorted and duplicate-free; member indices
/// refer to this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverFamily {
    labels: Vec<String>,
    host: HostGraph,
    members: Vec<VertexSet>,
}

impl CoverFamily {
    pub fn new(
        labels: Vec<String>,
        host: HostGraph,
        members: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self> {
        host.validate()?;
        check_labels(&labels)?;
        if labels.len() != host.order() {
            return Err(Error::InvalidHost(format!(
                "{} labels for a host on {} vertices",
                labels.len(),
                host.order()
            )));
        }
        let mut members: Vec<VertexSet> = members.into_iter().collect();
        for m in &members {
            if m.is_empty() {
                return Err(Error::EmptyEdge);
            }
            check_in_range(m, labels.len())?;
        }
        members.sort();
        members.dedup();
        Ok(Self {
            labels,
            host,
            members,
        })
    }

    /// Complete host on `vertices`, members given by label.
    pub fn complete<S: AsRef<str>>(vertices: &[S], members: &[&[S]]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let host = HostGraph::Complete {
            order: labels.len(),
        };
        Self::from_labeled_members(labels, host, members)
    }

    /// Complete bipartite host with the given parts, members given by label.
    pub fn bipartite<S: AsRef<str>>(part1: &[S], part2: &[S], members: &[&[S]]) -> Result<Self> {
        let labels: Vec<String> = part1
            .iter()
            .chain(part2)
            .map(|s| s.as_ref().to_string())
            .collect();
        let host = HostGraph::CompleteBipartite {
            left: part1.len(),
            right: part2.len(),
        };
        Self::from_labeled_members(labels, host, members)
    }

    fn from_labeled_members<S: AsRef<str>>(
        labels: Vec<String>,
        host: HostGraph,
        members: &[&[S]],
    ) -> Result<Self> {
        check_labels(&labels)?;
        let members = members
            .iter()
            .map(|m| {
                m.iter()
                    .map(|s| resolve_label(&labels, s.as_ref()))
                    .collect::<Result<VertexSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, host, members)
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

    pub fn host(&self) -> HostGraph {
        self.host
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_index(&self, member: &VertexSet) -> Option<usize> {
        self.members.binary_search(member).ok()
    }

    pub fn labeled(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }

    /// Membership count of every vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.labels.len()];
        for m in &self.members {
            for x in m.iter() {
                deg[x] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Same family with a different member list (validated again).
    pub fn with_members(&self, members: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        Self::new(self.labels.clone(), self.host, members)
    }

    /// The members as edges of a hypergraph on the host vertices.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.labels.clone(), self.members.iter().cloned())
            .expect("cover members are valid edges")
    }

    pub(crate) fn stars(&self) -> Vec<FixedBitSet> {
        let mut stars = vec![FixedBitSet::with_capacity(self.members.len()); self.labels.len()];
        for (i, m) in self.members.iter().enumerate() {
            for x in m.iter() {
                stars[x].insert(i);
            }
        }
        stars
    }
}

/// Per-row summary of host-edge coverage.
struct RowCoverage {
    uncovered: bool,
    private: FixedBitSet,
}

fn coverage(c: &CoverFamily) -> (bool, FixedBitSet) {
    let stars = c.stars();
    let host = c.host;
    let m = c.members.len();
    let rows = par::map_in(host.row_count(), |x| {
        let mut row = RowCoverage {
            uncovered: false,
            private: FixedBitSet::with_capacity(m),
        };
        for y in host.row(x) {
            let mut both = stars[x].intersection(&stars[y]);
            match (both.next(), both.next()) {
                (None, _) => row.uncovered = true,
                (Some(j), None) => row.private.insert(j),
                _ => {}
            }
        }
        row
    });
    let mut covered = true;
    let mut private = FixedBitSet::with_capacity(m);
    for row in rows {
        covered &= !row.uncovered;
        private.union_with(&row.private);
    }
    (covered, private)
}

/// Every host edge lies inside some member.
pub fn is_edge_cover(c: &CoverFamily) -> bool {
    let stars = c.stars();
    let host = c.host;
    par::all_in(host.row_count(), |x| {
        host.row(x).all(|y| !stars[x].is_disjoint(&stars[y]))
    })
}

/// An edge cover in which every member covers some host edge no other member
/// covers.
pub fn is_minimal_edge_cover(c: &CoverFamily) -> bool {
    let (covered, private) = coverage(c);
    covered && private.count_ones(..) == c.members.len()
}

/// Elements `x` of member `index` such that some host edge at `x` is covered
/// by that member alone.
pub fn essential_elements(c: &CoverFamily, index: usize) -> Result<VertexSet> {
    let member = c
        .members
        .get(index)
        .ok_or_else(|| Error::Domain(format!("no member with index {index}")))?;
    let stars = c.stars();
    Ok(essential_in(c.host, &stars, member))
}

/// [`essential_elements`] for a member given as a set.
pub fn essential_elements_of(c: &CoverFamily, member: &VertexSet) -> Result<VertexSet> {
    let index = c
        .member_index(member)
        .ok_or_else(|| Error::Domain(format!("{:?} is not a member", c.labeled(member))))?;
    essential_elements(c, index)
}

fn essential_in(host: HostGraph, stars: &[FixedBitSet], member: &VertexSet) -> VertexSet {
    member
        .iter()
        .filter(|&x| {
            member
                .iter()
                .any(|y| host.adjacent(x, y) && stars[x].intersection(&stars[y]).nth(1).is_none())
        })
        .collect()
}

/// Whether every element of every member is essential.
pub fn all_essential(c: &CoverFamily) -> bool {
    let stars = c.stars();
    c.members
        .iter()
        .all(|m| essential_in(c.host, &stars, m).len() == m.len())
}

/// Repeatedly deletes the first non-essential element (members in sorted
/// order, elements in sorted order) until every element is essential.
///
/// Coverage, minimality and the member count are preserved; degrees can only
/// drop. The result is a fixpoint.
pub fn prune_nonessential(c: &CoverFamily) -> Result<CoverFamily> {
    if !is_minimal_edge_cover(c) {
        return Err(Error::Contract("pruning needs a minimal edge cover".into()));
    }
    let mut members = c.members.clone();
    'outer: loop {
        members.sort();
        let mut stars = vec![FixedBitSet::with_capacity(members.len()); c.labels.len()];
        for (i, m) in members.iter().enumerate() {
            for x in m.iter() {
                stars[x].insert(i);
            }
        }
        for m in members.iter_mut() {
            let essential = essential_in(c.host, &stars, m);
            let redundant = m.iter().find(|&x| !essential.contains(x));
            if let Some(x) = redundant {
                m.remove(x);
                assert!(
                    !m.is_empty(),
                    "a member of a minimal cover cannot lose every element"
                );
                continue 'outer;
            }
        }
        break;
    }
    let out = c.with_members(members)?;
    assert_eq!(out.len(), c.len(), "pruning merged two members");
    Ok(out)
}

/// Maximum degree over part 1 and over part 2 of a bipartite host.
pub fn part_degrees(c: &CoverFamily) -> Result<(usize, usize)> {
    let HostGraph::CompleteBipartite { left, .. } = c.host else {
        return Err(Error::Domain("part degrees need a bipartite host".into()));
    };
    let deg = c.degrees();
    let d1 = deg[..left].iter().copied().max().unwrap_or(0);
    let d2 = deg[left..].iter().copied().max().unwrap_or(0);
    Ok((d1, d2))
}
