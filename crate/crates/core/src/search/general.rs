//! Exact solver for the restricted covering problem: choose a largest
//! subfamily of the candidates that covers the ground set, is minimal as a
//! cover, and meets each restriction set at most `cap` times.
//!
//! The branching picks the uncovered element with the fewest options and
//! tries each candidate containing it, forbidding earlier options for that
//! element. Every minimal cover is reached this way: the members picked for
//! uncovered elements already cover the ground set, and a minimal cover has
//! no covering proper subfamily.

use std::time::Duration;

use super::Budget;
use crate::cover::HostGraph;
use crate::doc::{InstanceDoc, RestrictionDoc, VERSION};
use crate::error::{Error, Result};
use crate::hypergraph::resolve_label;
use crate::matching::BipartiteGraph;
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub set: VertexSet,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralCoverInstance {
    pub ground: Vec<String>,
    pub candidates: Vec<VertexSet>,
    pub restrictions: Vec<Restriction>,
}

/// A maximum feasible subfamily, as indices into the candidate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSolution {
    pub size: usize,
    pub members: Vec<usize>,
}

const MAX_GROUND: usize = 64;

impl GeneralCoverInstance {
    pub fn from_doc(doc: &InstanceDoc) -> Result<Self> {
        if doc.version != VERSION {
            return Err(Error::Domain(format!(
                "unsupported document version {}",
                doc.version
            )));
        }
        crate::hypergraph::check_labels(&doc.ground)?;
        let resolve = |set: &[String]| -> Result<VertexSet> {
            set.iter().map(|l| resolve_label(&doc.ground, l)).collect()
        };
        Ok(GeneralCoverInstance {
            ground: doc.ground.clone(),
            candidates: doc
                .candidates
                .iter()
                .map(|c| resolve(c))
                .collect::<Result<_>>()?,
            restrictions: doc
                .restrictions
                .iter()
                .map(|r| {
                    Ok(Restriction {
                        set: resolve(&r.set)?,
                        cap: r.cap,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_doc(&self) -> InstanceDoc {
        let names = |s: &VertexSet| s.iter().map(|x| self.ground[x].clone()).collect();
        InstanceDoc {
            version: VERSION,
            ground: self.ground.clone(),
            candidates: self.candidates.iter().map(names).collect(),
            restrictions: self
                .restrictions
                .iter()
                .map(|r| RestrictionDoc {
                    set: names(&r.set),
                    cap: r.cap,
                })
                .collect(),
        }
    }

    /// Checks a proposed subfamily against all three conditions.
    pub fn is_feasible(&self, members: &[usize]) -> bool {
        let chosen: Vec<&VertexSet> = members.iter().map(|&i| &self.candidates[i]).collect();
        let covers = (0..self.ground.len()).all(|x| chosen.iter().any(|c| c.contains(x)));
        let minimal = chosen.iter().enumerate().all(|(i, c)| {
            c.iter().any(|x| {
                chosen
                    .iter()
                    .enumerate()
                    .all(|(k, o)| k == i || !o.contains(x))
            })
        });
        let capped = self
            .restrictions
            .iter()
            .all(|r| chosen.iter().filter(|c| c.intersects(&r.set)).count() <= r.cap);
        covers && minimal && capped
    }
}

struct Solver<'a> {
    cands: Vec<u64>,
    /// For each candidate, the restrictions it meets.
    meets: Vec<Vec<usize>>,
    caps: Vec<usize>,
    /// For each element, candidate indices containing it.
    options: Vec<Vec<usize>>,
    full: u64,
    budget: &'a Budget,
    best: Option<Vec<usize>>,
}

impl Solver<'_> {
    fn allowed(&self, i: usize, banned: &[bool], load: &[usize]) -> bool {
        !banned[i] && self.meets[i].iter().all(|&r| load[r] < self.caps[r])
    }

    fn run(
        &mut self,
        chosen: &mut Vec<usize>,
        covered: u64,
        banned: &mut Vec<bool>,
        load: &mut Vec<usize>,
    ) {
        if !self.budget.tick() {
            return;
        }
        // a member with no element covered only by itself stays redundant
        for &i in chosen.iter() {
            let others = chosen
                .iter()
                .filter(|&&k| k != i)
                .fold(0, |a, &k| a | self.cands[k]);
            if self.cands[i] & !others == 0 {
                return;
            }
        }
        if covered == self.full {
            let better = match &self.best {
                None => true,
                Some(b) => {
                    chosen.len() > b.len() || (chosen.len() == b.len() && sorted(chosen) < *b)
                }
            };
            if better {
                self.best = Some(sorted(chosen));
            }
            return;
        }
        let uncovered = self.full & !covered;
        if let Some(b) = &self.best {
            if chosen.len() + uncovered.count_ones() as usize <= b.len() {
                return;
            }
        }
        let mut pick = None;
        let mut fewest = usize::MAX;
        let mut bits = uncovered;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let n = self.options[x]
                .iter()
                .filter(|&&i| self.allowed(i, banned, load))
                .count();
            if n < fewest {
                fewest = n;
                pick = Some(x);
            }
        }
        let x = pick.expect("some element is uncovered");
        if fewest == 0 {
            return;
        }
        let opts: Vec<usize> = self.options[x].clone();
        let mut newly_banned = Vec::new();
        for i in opts {
            if !self.allowed(i, banned, load) {
                continue;
            }
            chosen.push(i);
            for &r in &self.meets[i] {
                load[r] += 1;
            }
            self.run(chosen, covered | self.cands[i], banned, load);
            for &r in &self.meets[i] {
                load[r] -= 1;
            }
            chosen.pop();
            banned[i] = true;
            newly_banned.push(i);
            if self.budget.exhausted() {
                break;
            }
        }
        for i in newly_banned {
            banned[i] = false;
        }
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// `Ok(None)` when no subfamily satisfies the conditions; a distinct
/// [`Error::BudgetExhausted`] when the budget runs out first. Ties are
/// broken towards the lexicographically smallest index list.
pub fn solve_general_cover(
    inst: &GeneralCoverInstance,
    budget: Option<Duration>,
) -> Result<Option<GeneralSolution>> {
    let n = inst.ground.len();
    if n > MAX_GROUND {
        return Err(Error::Config(format!(
            "ground sets above {MAX_GROUND} elements are not supported"
        )));
    }
    let mask = |s: &VertexSet| -> Result<u64> {
        s.iter().try_fold(0u64, |acc, x| {
            if x < n {
                Ok(acc | 1 << x)
            } else {
                Err(Error::VertexOutOfRange { index: x, size: n })
            }
        })
    };
    let cands: Vec<u64> = inst.candidates.iter().map(mask).collect::<Result<_>>()?;
    let restriction_masks: Vec<u64> = inst
        .restrictions
        .iter()
        .map(|r| mask(&r.set))
        .collect::<Result<_>>()?;
    // empty sets have no private element, and a repeated set can only be used once
    let mut usable = vec![true; cands.len()];
    for i in 0..cands.len() {
        usable[i] = cands[i] != 0 && !cands[..i].contains(&cands[i]);
    }
    let options = (0..n)
        .map(|x| {
            (0..cands.len())
                .filter(|&i| usable[i] && cands[i] >> x & 1 == 1)
                .collect()
        })
        .collect();
    let meets = cands
        .iter()
        .map(|&c| {
            (0..restriction_masks.len())
                .filter(|&r| c & restriction_masks[r] != 0)
                .collect()
        })
        .collect();
    let budget = Budget::new(budget);
    let mut solver = Solver {
        full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        caps: inst.restrictions.iter().map(|r| r.cap).collect(),
        meets,
        options,
        cands,
        budget: &budget,
        best: None,
    };
    if n == 0 {
        return Ok(Some(GeneralSolution {
            size: 0,
            members: Vec::new(),
        }));
    }
    let mut banned = vec![false; solver.cands.len()];
    let mut load = vec![0; solver.caps.len()];
    solver.run(&mut Vec::new(), 0, &mut banned, &mut load);
    if budget.exhausted() {
        return Err(Error::BudgetExhausted);
    }
    Ok(solver.best.map(|members| GeneralSolution {
        size: members.len(),
        members,
    }))
}

/// Ground set = host edges, named `a-b` by vertex index. Each candidate
/// vertex set becomes the host edges inside it (empty or repeated results
/// are dropped), and each host vertex contributes its incident edges as a
/// restriction with cap `d`.
pub fn encode_edge_cover_as_general(
    host: HostGraph,
    candidates: &[VertexSet],
    d: usize,
) -> Result<GeneralCoverInstance> {
    let order = host.order();
    let edges: Vec<(usize, usize)> = (0..order)
        .flat_map(|x| (x + 1..order).map(move |y| (x, y)))
        .filter(|&(x, y)| host.adjacent(x, y))
        .collect();
    for c in candidates {
        crate::hypergraph::check_in_range(c, order)?;
    }
    let mut out: Vec<VertexSet> = Vec::new();
    for c in candidates {
        let inside: VertexSet = edges
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| c.contains(x) && c.contains(y))
            .map(|(i, _)| i)
            .collect();
        if !inside.is_empty() && !out.contains(&inside) {
            out.push(inside);
        }
    }
    let restrictions = (0..order)
        .map(|v| Restriction {
            set: edges
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| x == v || y == v)
                .map(|(i, _)| i)
                .collect(),
            cap: d,
        })
        .collect();
    Ok(GeneralCoverInstance {
        ground: edges.iter().map(|(x, y)| format!("{x}-{y}")).collect(),
        candidates: out,
        restrictions,
    })
}

/// Maximum matching as a covering instance. The ground set is the left
/// vertices `l*`, the right vertices `r*` and an absorber `z`. Candidates
/// are the graph edges plus `{z} ∪ S` for every subset `S` of the other
/// vertices, and every element has a singleton restriction with cap 1. The
/// chosen sets then partition the ground set, so the optimum is `ν + 1`
/// (the matching edges plus one absorber).
pub fn encode_bipartite_matching(g: &BipartiteGraph) -> Result<GeneralCoverInstance> {
    let (nl, nr) = (g.left_count(), g.right_count());
    let others = nl + nr;
    if others + 1 > 20 {
        return Err(Error::Config(
            "the matching encoding is exponential; keep |L| + |R| below 20".into(),
        ));
    }
    let mut ground: Vec<String> = (0..nl).map(|l| format!("l{l}")).collect();
    ground.extend((0..nr).map(|r| format!("r{r}")));
    ground.push("z".into());
    let z = others;
    let mut candidates: Vec<VertexSet> = (0..nl)
        .flat_map(|l| {
            g.neighbors(l)
                .iter()
                .map(move |&r| VertexSet::from([l, nl + r]))
        })
        .collect();
    for s in 0u32..1 << others {
        candidates.push(
            (0..others)
                .filter(|&x| s >> x & 1 == 1)
                .chain([z])
                .collect(),
        );
    }
    let restrictions = (0..=others)
        .map(|x| Restriction {
            set: VertexSet::singleton(x),
            cap: 1,
        })
        .collect();
    Ok(GeneralCoverInstance {
        ground,
        candidates,
        restrictions,
    })
}
