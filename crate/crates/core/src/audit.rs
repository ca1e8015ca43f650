//! Replays the level-by-level counting argument behind the upper bound on a
//! concrete minimal edge cover of a complete bipartite graph, checking every
//! intermediate claim.
//!
//! Starting from `U_1 = {v}` in part 1, each level `k` collects the part-2
//! vertices `M_k` that have exactly `k` members touching `U_k` but larger
//! degree, forms their residuals `V1 ∖ ⋃H_{x,k}`, and extends `U_k` by a
//! minimal cover `C_k` of those residuals. The members first reached at
//! level `k` form `D_k`, and the set pairs `(A_y, B_y)` for `y ∈ C_k` bound
//! `|C_k|` through the Bollobás inequality, evaluated here exactly.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::{self, binomial};
use crate::cover::{self, CoverFamily, HostGraph};
use crate::doc::CoverDoc;
use crate::error::{Error, Result};
use crate::par;
use crate::set::VertexSet;

/// One set pair, with members referenced by index into the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPair {
    pub y: String,
    pub x_y: String,
    pub a: VertexSet,
    pub b: VertexSet,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPairFamily {
    pub pairs: Vec<SetPair>,
}

impl SetPairFamily {
    /// Builds a family from `(A, B)` pairs with placeholder witnesses.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexSet, VertexSet)>) -> Self {
        let pairs = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (a, b))| SetPair {
                y: i.to_string(),
                x_y: String::new(),
                a,
                b,
            })
            .collect();
        SetPairFamily { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditLevel {
    pub k: usize,
    /// `U_k` (part-1 labels).
    pub u: Vec<String>,
    /// `M_k` (part-2 labels).
    pub m: Vec<String>,
    /// `V1 ∖ ⋃H_{x,k}` for each `x` in `M_k`, in the same order.
    pub residuals: Vec<Vec<String>>,
    /// `C_k` (part-1 labels).
    pub c: Vec<String>,
    /// `D_k` as member indices.
    pub d: VertexSet,
    pub set_pairs: SetPairFamily,
    /// Exact value of the Bollobás sum, as `p/q`.
    pub bollobas_sum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditTrace {
    pub cover: CoverDoc,
    pub root: String,
    pub part_degrees: (usize, usize),
    /// `H_1` as member indices.
    pub h1: VertexSet,
    pub levels: Vec<AuditLevel>,
}

impl AuditTrace {
    pub fn member_count(&self) -> usize {
        self.cover.members.len()
    }
}

/// Per-level comparison against the two-sided bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBound {
    pub k: usize,
    pub c_size: usize,
    #[serde(with = "bounds::big_string")]
    pub c_bound: BigUint,
    pub d_size: usize,
    #[serde(with = "bounds::big_string")]
    pub d_bound: BigUint,
    /// `|D_k|` exceeded `(d1 − 1)·C(d1 + k − 1, k)` and only the `max` form holds.
    pub slack_case: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBoundsReport {
    pub d1: usize,
    pub d2: usize,
    pub levels: Vec<LevelBound>,
    pub h1_size: usize,
    pub member_count: usize,
    /// `d1 + Σ_k max(d1, (d1 − 1)·C(d1 + k − 1, k))`, which the level counts
    /// actually bound.
    #[serde(with = "bounds::big_string")]
    pub level_sum: BigUint,
    /// `(d1 − 1)·C(d1 + d2 − 1, d2) + 1`.
    #[serde(with = "bounds::big_string")]
    pub closed_form: BigUint,
    /// Informational: the closed form undercounts the level sum when `d1 < d2`.
    pub closed_form_holds: bool,
}

fn fail(level: usize, invariant: &str, detail: String) -> Error {
    Error::Audit {
        level,
        invariant: invariant.to_string(),
        detail,
    }
}

struct Ctx<'a> {
    c: &'a CoverFamily,
    left: usize,
    stars: Vec<VertexSet>,
    degree: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(c: &'a CoverFamily) -> Result<Self> {
        let HostGraph::CompleteBipartite { left, .. } = c.host() else {
            return Err(Error::Domain(
                "the audit needs a complete bipartite host".into(),
            ));
        };
        if !cover::is_minimal_edge_cover(c) {
            return Err(Error::Contract(
                "the audit needs a minimal edge cover".into(),
            ));
        }
        if !cover::all_essential(c) {
            return Err(Error::Contract(
                "every element must be essential; prune the cover first".into(),
            ));
        }
        let stars: Vec<VertexSet> = c.stars().iter().map(|s| s.ones().collect()).collect();
        let degree = stars.iter().map(VertexSet::len).collect();
        Ok(Ctx {
            c,
            left,
            stars,
            degree,
        })
    }

    fn part1(&self) -> impl Iterator<Item = usize> {
        0..self.left
    }

    fn part2(&self) -> impl Iterator<Item = usize> {
        self.left..self.c.host().order()
    }

    fn touching(&self, u: &VertexSet) -> VertexSet {
        (0..self.c.len())
            .filter(|&e| self.c.members()[e].intersects(u))
            .collect()
    }

    fn names(&self, set: &VertexSet) -> Vec<String> {
        self.c.labeled(set)
    }

    fn indices(&self, names: &[String]) -> Result<VertexSet> {
        names.iter().map(|n| self.c.index_of(n)).collect()
    }

    /// `V1 ∖ ⋃H_{x,k}` where `h_xk` are member indices.
    fn residual(&self, h_xk: &VertexSet) -> VertexSet {
        self.part1()
            .filter(|&y| !h_xk.iter().any(|e| self.c.members()[e].contains(y)))
            .collect()
    }
}

/// Audits with `U_1` = the first part-1 vertex.
pub fn audit_upper_bound(c: &CoverFamily) -> Result<AuditTrace> {
    audit_from_root(c, 0)
}

/// Audits once for every choice of the starting part-1 vertex.
pub fn audit_all_roots(c: &CoverFamily) -> Result<Vec<AuditTrace>> {
    let HostGraph::CompleteBipartite { left, .. } = c.host() else {
        return Err(Error::Domain(
            "the audit needs a complete bipartite host".into(),
        ));
    };
    par::map_in(left, |v| audit_from_root(c, v))
        .into_iter()
        .collect()
}

/// Audits with `U_1 = {root}` for a part-1 vertex `root`.
pub fn audit_from_root(c: &CoverFamily, root: usize) -> Result<AuditTrace> {
    let ctx = Ctx::new(c)?;
    if root >= ctx.left {
        return Err(Error::Domain(format!("root {root} is not a part-1 vertex")));
    }
    let d1 = ctx.part1().map(|x| ctx.degree[x]).max().unwrap_or(0);
    let d2 = ctx.part2().map(|x| ctx.degree[x]).max().unwrap_or(0);

    let mut u = VertexSet::singleton(root);
    check_property_one(&ctx, &u, 1)?;
    let h1 = ctx.touching(&u);
    let mut levels = Vec::new();
    for k in 1..d2 {
        let level = build_level(&ctx, &u, k)?;
        let c_k = ctx.indices(&level.c)?;
        u = u.union(&c_k);
        check_property_one(&ctx, &u, k + 1)?;
        levels.push(level);
    }

    let reached = ctx.touching(&u);
    if reached.len() != c.len() {
        let missed = VertexSet::range(c.len()).difference(&reached);
        return Err(fail(
            d2,
            "every member reached",
            format!("members {missed:?} never meet U"),
        ));
    }
    let mut seen = h1.clone();
    for level in &levels {
        if seen.intersects(&level.d) {
            return Err(fail(
                level.k,
                "D_k disjoint from earlier levels",
                format!("{:?}", seen.intersection(&level.d)),
            ));
        }
        seen = seen.union(&level.d);
    }
    if seen.len() != c.len() {
        return Err(fail(
            d2,
            "H_1 and the D_k partition the cover",
            format!("only {} of {} members", seen.len(), c.len()),
        ));
    }
    if h1.len() > d1 {
        return Err(fail(1, "|H_1| <= d1", format!("{} > {d1}", h1.len())));
    }
    Ok(AuditTrace {
        cover: CoverDoc::from(c),
        root: c.label(root).to_string(),
        part_degrees: (d1, d2),
        h1,
        levels,
    })
}

fn check_property_one(ctx: &Ctx, u: &VertexSet, k: usize) -> Result<()> {
    for x in ctx.part2() {
        let hit = ctx.stars[x]
            .iter()
            .filter(|&e| ctx.c.members()[e].intersects(u))
            .count();
        let need = k.min(ctx.degree[x]);
        if hit < need {
            return Err(fail(
                k,
                "property (1)",
                format!(
                    "{} has {hit} members meeting U_{k}, needs {need}",
                    ctx.c.label(x)
                ),
            ));
        }
    }
    Ok(())
}

fn build_level(ctx: &Ctx, u: &VertexSet, k: usize) -> Result<AuditLevel> {
    let h_k = ctx.touching(u);
    let mut m_k = Vec::new();
    let mut residuals = Vec::new();
    for x in ctx.part2() {
        let h_xk = ctx.stars[x].intersection(&h_k);
        if ctx.degree[x] > k && h_xk.len() == k {
            let r = ctx.residual(&h_xk);
            if r.is_empty() {
                return Err(fail(
                    k,
                    "residual nonempty",
                    format!("residual of {} is empty", ctx.c.label(x)),
                ));
            }
            if r.intersects(u) {
                return Err(fail(
                    k,
                    "residual disjoint from U_k",
                    format!("residual of {}", ctx.c.label(x)),
                ));
            }
            m_k.push(x);
            residuals.push(r);
        }
    }

    let c_k = minimal_cover(ctx.part1().filter(|&y| !u.contains(y)), &residuals);
    if c_k.intersects(u) {
        return Err(fail(
            k,
            "C_k disjoint from U_k",
            format!("{:?}", ctx.names(&c_k.intersection(u))),
        ));
    }
    if !is_minimal_transversal(&c_k, &residuals) {
        return Err(fail(
            k,
            "C_k minimal cover of residuals",
            format!("{:?}", ctx.names(&c_k)),
        ));
    }
    let d_k: VertexSet = (0..ctx.c.len())
        .filter(|&e| !h_k.contains(e) && ctx.c.members()[e].intersects(&c_k))
        .collect();

    let mut level = AuditLevel {
        k,
        u: ctx.names(u),
        m: m_k.iter().map(|&x| ctx.c.label(x).to_string()).collect(),
        residuals: residuals.iter().map(|r| ctx.names(r)).collect(),
        c: ctx.names(&c_k),
        d: d_k,
        set_pairs: SetPairFamily::default(),
        bollobas_sum: String::new(),
    };
    let sp = extract_set_pairs(&level, ctx.c)?;
    for (pair, y) in sp.pairs.iter().zip(c_k.iter()) {
        if pair.b.len() != k {
            return Err(fail(
                k,
                "|B_y| = k",
                format!("{}: {}", pair.y, pair.b.len()),
            ));
        }
        // the member covering {x_y, y} misses U_k, so it is not in A_y
        if pair.a.len() >= ctx.degree[y] {
            return Err(fail(
                k,
                "|A_y| <= d(y) - 1",
                format!("{}: {}", pair.y, pair.a.len()),
            ));
        }
    }
    if !verify_cross_intersection(&sp) {
        return Err(fail(
            k,
            "cross-intersection",
            "A_y1 ∩ B_y2 = ∅ for some y1 ≠ y2".into(),
        ));
    }
    let sum = bollobas_sum(&sp)?;
    if sum > BigRational::one() {
        return Err(fail(k, "Bollobás sum <= 1", sum.to_string()));
    }
    level.bollobas_sum = sum.to_string();
    level.set_pairs = sp;
    Ok(level)
}

/// Greedy in candidate order, then delete-minimalized in the same order.
fn minimal_cover(candidates: impl Iterator<Item = usize>, family: &[VertexSet]) -> VertexSet {
    let mut chosen = VertexSet::new();
    for y in candidates {
        if family
            .iter()
            .any(|r| r.contains(y) && !r.intersects(&chosen))
        {
            chosen.insert(y);
        }
    }
    for y in chosen.clone().iter() {
        let mut without = chosen.clone();
        without.remove(y);
        if family.iter().all(|r| r.intersects(&without)) {
            chosen = without;
        }
    }
    chosen
}

fn is_minimal_transversal(t: &VertexSet, family: &[VertexSet]) -> bool {
    family.iter().all(|r| r.intersects(t))
        && t.iter().all(|y| {
            family
                .iter()
                .any(|r| r.intersection(t) == VertexSet::singleton(y))
        })
}

/// The set pairs of a level: for `y ∈ C_k`, `x_y` is the first `x ∈ M_k`
/// whose residual meets `C_k` exactly in `y`, `A_y` the members through `y`
/// meeting `U_k`, and `B_y = H_{x_y,k}`.
pub fn extract_set_pairs(level: &AuditLevel, c: &CoverFamily) -> Result<SetPairFamily> {
    let ctx_members = c.members();
    let u = level
        .u
        .iter()
        .map(|n| c.index_of(n))
        .collect::<Result<VertexSet>>()?;
    let c_k = level
        .c
        .iter()
        .map(|n| c.index_of(n))
        .collect::<Result<VertexSet>>()?;
    let stars: Vec<VertexSet> = c.stars().iter().map(|s| s.ones().collect()).collect();
    let touches_u = |e: usize| ctx_members[e].intersects(&u);
    let mut pairs = Vec::with_capacity(c_k.len());
    for y in c_k.iter() {
        let x_y = level
            .m
            .iter()
            .map(|n| c.index_of(n))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|&x| {
                let h_xk: VertexSet = stars[x].iter().filter(|&e| touches_u(e)).collect();
                let covered = |z: usize| h_xk.iter().any(|e| ctx_members[e].contains(z));
                c_k.iter().filter(|&z| !covered(z)).eq(std::iter::once(y))
            })
            .ok_or_else(|| {
                fail(
                    level.k,
                    "x_y exists",
                    format!("no witness for {}", c.label(y)),
                )
            })?;
        pairs.push(SetPair {
            y: c.label(y).to_string(),
            x_y: c.label(x_y).to_string(),
            a: stars[y].iter().filter(|&e| touches_u(e)).collect(),
            b: stars[x_y].iter().filter(|&e| touches_u(e)).collect(),
        });
    }
    Ok(SetPairFamily { pairs })
}

/// Whether `A_i ∩ B_j = ∅` holds exactly when `i = j`.
pub fn verify_cross_intersection(sp: &SetPairFamily) -> bool {
    sp.pairs.iter().enumerate().all(|(i, p)| {
        sp.pairs
            .iter()
            .enumerate()
            .all(|(j, q)| p.a.intersects(&q.b) == (i != j))
    })
}

/// `Σ 1 / C(|A_y| + |B_y|, |B_y|)` in exact arithmetic.
pub fn bollobas_sum(sp: &SetPairFamily) -> Result<BigRational> {
    if !verify_cross_intersection(sp) {
        return Err(Error::Contract(
            "the family is not cross-intersecting".into(),
        ));
    }
    let mut sum = BigRational::zero();
    for p in &sp.pairs {
        let (a, b) = (p.a.len() as u64, p.b.len() as u64);
        sum += BigRational::new(1.into(), binomial(a + b, b).into());
    }
    Ok(sum)
}

/// Checks every level of a trace against the two-sided counting bounds for
/// degrees `(d1, d2)` on (part 1, part 2).
pub fn level_bounds_check(trace: &AuditTrace, d1: usize, d2: usize) -> Result<LevelBoundsReport> {
    let (a1, a2) = trace.part_degrees;
    if d1 < a1 || d2 < a2 {
        return Err(Error::Contract(format!(
            "degrees ({d1}, {d2}) are below the cover's part degrees ({a1}, {a2})"
        )));
    }
    if d1 == 0 || d2 == 0 {
        return Err(Error::Domain("degrees must be positive".into()));
    }
    if trace.levels.len() + 1 > d2 {
        return Err(fail(
            trace.levels.len(),
            "at most d2 - 1 levels",
            format!("{} levels", trace.levels.len()),
        ));
    }
    let (d1u, d2u) = (d1 as u64, d2 as u64);
    let mut levels = Vec::with_capacity(trace.levels.len());
    for level in &trace.levels {
        let k = level.k as u64;
        let c_bound = bounds::level_c_bound(d1u, k);
        let d_bound = bounds::level_d_bound(d1u, k);
        let (c_size, d_size) = (level.c.len(), level.d.len());
        if BigUint::from(c_size) > c_bound {
            return Err(fail(
                level.k,
                "|C_k| <= C(d1+k-1, k)",
                format!("{c_size} > {c_bound}"),
            ));
        }
        if BigUint::from(d_size) > d_bound {
            return Err(fail(
                level.k,
                "|D_k| <= max(d1, (d1-1)·C(d1+k-1, k))",
                format!("{d_size} > {d_bound}"),
            ));
        }
        let product = BigUint::from(d1 - 1) * binomial(d1u + k - 1, k);
        levels.push(LevelBound {
            k: level.k,
            c_size,
            c_bound,
            d_size,
            d_bound,
            slack_case: BigUint::from(d_size) > product,
        });
    }
    let member_count = trace.member_count();
    let level_sum = bounds::b2_level_sum(d1u, d2u)?;
    if BigUint::from(member_count) > level_sum {
        return Err(fail(
            trace.levels.len(),
            "|H| <= level sum",
            format!("{member_count} > {level_sum}"),
        ));
    }
    let closed_form = bounds::b2_closed_form(d1u, d2u)?;
    Ok(LevelBoundsReport {
        d1,
        d2,
        levels,
        h1_size: trace.h1.len(),
        member_count,
        closed_form_holds: BigUint::from(member_count) <= closed_form,
        level_sum,
        closed_form,
    })
}
