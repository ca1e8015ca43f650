use std::collections::BTreeSet;
use std::path::Path;
use std::time::Duration;

use anyhow::{Context, Result};
use hyperinv::audit::{self, AuditTrace, LevelBoundsReport};
use hyperinv::bounds::{bounds_b, bounds_b2, bounds_i, BoundReport};
use hyperinv::canonical::is_isomorphic;
use hyperinv::constructions::{self, RemovalOrder};
use hyperinv::cover::{self, CoverFamily};
use hyperinv::doc::{self, CoverDoc, FamiliesDoc, HypergraphDoc, InstanceDoc, PermutationDoc};
use hyperinv::invertibility::{self, Criticality};
use hyperinv::search::{self, GeneralCoverInstance, SearchConfig, SearchOutcome};
use hyperinv::Hypergraph;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{
    AuditCmd, BoundsCmd, Budget, Command, ConstructCmd, CoverCmd, CoversCmd, InvertCmd, Quantity,
    ReduceCmd, ReproCmd, SearchArgs, SolveCmd,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A negative verification result.
    Fail,
    /// Budget exhausted; the payload holds what was found.
    Partial,
    /// Usage, input or parse error.
    Error,
}

/// How the text renderer should lay out the payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Fields,
    BoundsTable,
    Checks,
}

pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub layout: Layout,
}

impl CommandResult {
    fn new(status: Status, payload: impl Serialize) -> Self {
        CommandResult {
            status,
            payload: serde_json::to_value(payload).expect("payloads serialize"),
            diagnostics: Vec::new(),
            layout: Layout::Fields,
        }
    }

    fn ok(payload: impl Serialize) -> Self {
        Self::new(Status::Ok, payload)
    }

    fn verdict(passed: bool, payload: impl Serialize) -> Self {
        Self::new(if passed { Status::Ok } else { Status::Fail }, payload)
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.diagnostics.push(line.into());
        self
    }

    fn layout(mut self, layout: Layout) -> Self {
        self.layout = layout;
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Partial => 3,
        }
    }
}

pub fn run(command: &Command) -> CommandResult {
    dispatch(command).unwrap_or_else(|err| {
        let status = match err.downcast_ref::<hyperinv::Error>() {
            Some(hyperinv::Error::Audit { .. }) => Status::Fail,
            Some(hyperinv::Error::BudgetExhausted) => Status::Partial,
            _ => Status::Error,
        };
        let message = format!("{err:#}");
        CommandResult::new(status, Value::Null).note(message)
    })
}

fn dispatch(command: &Command) -> Result<CommandResult> {
    match command {
        Command::Invert(InvertCmd::Check { hypergraph }) => {
            invert_check(&read_hypergraph(hypergraph)?)
        }
        Command::Invert(InvertCmd::Critical { hypergraph }) => {
            invert_critical(&read_hypergraph(hypergraph)?)
        }
        Command::Cover(CoverCmd::Verify { cover }) => cover_verify(&read_cover(cover)?),
        Command::Construct(ConstructCmd::LowerBound { d }) => Ok(CommandResult::ok(
            CoverDoc::from(&constructions::lower_bound_cover(*d)?),
        )),
        Command::Construct(ConstructCmd::Double { cover }) => Ok(CommandResult::ok(
            CoverDoc::from(&constructions::double_cover(&read_cover(cover)?)?),
        )),
        Command::Reduce(ReduceCmd::CoverToCritical { cover }) => Ok(CommandResult::ok(
            HypergraphDoc::from(&constructions::cover_to_critical(&read_cover(cover)?)?),
        )),
        Command::Reduce(ReduceCmd::CriticalToCover { hypergraph }) => {
            Ok(CommandResult::ok(CoverDoc::from(
                &constructions::critical_to_bipartite_cover(&read_hypergraph(hypergraph)?)?,
            )))
        }
        Command::Reduce(ReduceCmd::BipartiteToComplete { cover, part2_first }) => {
            let order = if *part2_first {
                RemovalOrder::Part2First
            } else {
                RemovalOrder::Part1First
            };
            let out = constructions::bipartite_to_complete_cover_with(&read_cover(cover)?, order)?;
            Ok(CommandResult::ok(CoverDoc::from(&out)))
        }
        Command::Covers(CoversCmd::ToEdgeCover { families }) => {
            to_edge_cover(&read_doc::<FamiliesDoc>(families)?)
        }
        Command::Covers(CoversCmd::FromEdgeCover { cover }) => from_edge_cover(&read_cover(cover)?),
        Command::Audit(AuditCmd::UpperBound {
            cover,
            all_roots,
            d1,
            d2,
        }) => audit_upper_bound(&read_cover(cover)?, *all_roots, *d1, *d2),
        Command::Audit(AuditCmd::Setpairs { trace }) => audit_setpairs(trace),
        Command::Bounds(BoundsCmd::Table { max_d, two_sided }) => {
            bounds_table(*max_d, two_sided.as_deref())
        }
        Command::Search(args) => run_search(args),
        Command::Solve(SolveCmd::General { instance, budget }) => {
            solve_general(&read_doc(instance)?, *budget)
        }
        Command::Repro(ReproCmd::PaperValues) => repro(),
    }
}

fn read_doc<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    doc::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    Ok(read_doc::<HypergraphDoc>(path)?.to_hypergraph()?)
}

fn read_cover(path: &Path) -> Result<CoverFamily> {
    Ok(read_doc::<CoverDoc>(path)?.to_cover()?)
}

fn budget_of(b: Budget) -> Result<Option<Duration>> {
    match b.budget_secs {
        None => Ok(None),
        Some(s) if s.is_finite() && s >= 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(hyperinv::Error::Config(format!("invalid budget {s}")).into()),
    }
}

fn invert_check(h: &Hypergraph) -> Result<CommandResult> {
    Ok(match invertibility::find_inverting_permutation(h) {
        Some(p) => CommandResult::ok(json!({
            "invertible": true,
            "permutation": PermutationDoc::new(h.labels(), &p),
        })),
        None => {
            let def = invertibility::find_deficiency_set(h)
                .expect("non-invertible hypergraphs have a deficiency set");
            CommandResult::verdict(
                false,
                json!({
                    "invertible": false,
                    "deficiency": {
                        "set": h.labeled(&def.set),
                        "neighborhood": h.labeled(&def.neighborhood),
                    },
                }),
            )
        }
    })
}

fn invert_critical(h: &Hypergraph) -> Result<CommandResult> {
    Ok(match invertibility::criticality(h) {
        Criticality::Critical => {
            CommandResult::ok(json!({ "critical": true, "invertible": false }))
        }
        Criticality::Invertible => {
            CommandResult::verdict(false, json!({ "critical": false, "invertible": true }))
        }
        Criticality::NotCritical { witness_edge } => CommandResult::verdict(
            false,
            json!({
                "critical": false,
                "invertible": false,
                "still_not_invertible_without": h.labeled(&h.edges()[witness_edge]),
            }),
        ),
    })
}

fn cover_verify(c: &CoverFamily) -> Result<CommandResult> {
    let covers = cover::is_edge_cover(c);
    let minimal = cover::is_minimal_edge_cover(c);
    let mut payload = json!({
        "edge_cover": covers,
        "minimal": minimal,
        "members": c.len(),
        "max_degree": c.max_degree(),
    });
    if minimal {
        payload["all_essential"] = json!(cover::all_essential(c));
    }
    if c.host().is_bipartite() {
        payload["part_degrees"] = json!(cover::part_degrees(c)?);
    }
    Ok(CommandResult::verdict(minimal, payload))
}

fn to_sets(family: &[Vec<String>]) -> Vec<BTreeSet<String>> {
    family.iter().map(|s| s.iter().cloned().collect()).collect()
}

fn to_edge_cover(doc: &FamiliesDoc) -> Result<CommandResult> {
    doc.check_version()?;
    let c =
        constructions::covers_union_to_edge_cover(&to_sets(&doc.family), &to_sets(&doc.covers))?;
    Ok(CommandResult::ok(CoverDoc::from(&c)))
}

/// Prunes non-essential elements when needed, noting it.
fn essential_form(c: &CoverFamily) -> Result<(CoverFamily, Option<String>)> {
    if cover::is_minimal_edge_cover(c) && !cover::all_essential(c) {
        let pruned = cover::prune_nonessential(c)?;
        Ok((
            pruned,
            Some("input had non-essential elements; pruned before use".into()),
        ))
    } else {
        Ok((c.clone(), None))
    }
}

fn from_edge_cover(c: &CoverFamily) -> Result<CommandResult> {
    let (c, note) = essential_form(c)?;
    let (f, hh) = constructions::edge_cover_to_cover_family(&c)?;
    let list =
        |fam: Vec<BTreeSet<String>>| fam.into_iter().map(|s| s.into_iter().collect()).collect();
    let mut out = CommandResult::ok(FamiliesDoc {
        version: doc::VERSION,
        family: list(f),
        covers: list(hh),
    });
    if let Some(n) = note {
        out = out.note(n);
    }
    Ok(out)
}

/// Output of `audit upper-bound`, also accepted by `audit setpairs`.
#[derive(Serialize, Deserialize)]
struct AuditReport {
    passed: bool,
    traces: Vec<AuditTrace>,
    bounds: Vec<LevelBoundsReport>,
}

fn audit_upper_bound(
    c: &CoverFamily,
    all_roots: bool,
    d1: Option<usize>,
    d2: Option<usize>,
) -> Result<CommandResult> {
    let (c, note) = essential_form(c)?;
    let traces = if all_roots {
        audit::audit_all_roots(&c)?
    } else {
        vec![audit::audit_upper_bound(&c)?]
    };
    let (a1, a2) = cover::part_degrees(&c)?;
    let (d1, d2) = (d1.unwrap_or(a1), d2.unwrap_or(a2));
    let bounds = traces
        .iter()
        .map(|t| audit::level_bounds_check(t, d1, d2))
        .collect::<hyperinv::Result<Vec<_>>>()?;
    let mut out = CommandResult::ok(AuditReport {
        passed: true,
        traces,
        bounds: bounds.clone(),
    });
    if let Some(n) = note {
        out = out.note(n);
    }
    if let Some(b) = bounds.first() {
        out = out.note(format!(
            "{} members <= level sum {} (closed form {}{})",
            b.member_count,
            b.level_sum,
            b.closed_form,
            if b.closed_form_holds {
                ""
            } else {
                ", exceeded"
            }
        ));
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TraceInput {
    Report(AuditReport),
    Trace(Box<AuditTrace>),
}

fn audit_setpairs(path: &Path) -> Result<CommandResult> {
    let traces = match read_doc::<TraceInput>(path)? {
        TraceInput::Report(r) => r.traces,
        TraceInput::Trace(t) => vec![*t],
    };
    let mut rows = Vec::new();
    let mut passed = true;
    for t in &traces {
        let c = t.cover.to_cover()?;
        for level in &t.levels {
            let recomputed = audit::extract_set_pairs(level, &c)?;
            let cross = audit::verify_cross_intersection(&level.set_pairs);
            let sum = audit::bollobas_sum(&level.set_pairs).ok();
            let at_most_one = sum.as_ref().is_some_and(|s| s.numer() <= s.denom());
            let consistent = recomputed == level.set_pairs;
            passed &= cross && at_most_one && consistent;
            rows.push(json!({
                "root": t.root,
                "k": level.k,
                "pairs": level.set_pairs.len(),
                "cross_intersecting": cross,
                "bollobas_sum": sum.map(|s| s.to_string()),
                "at_most_one": at_most_one,
                "matches_recomputation": consistent,
            }));
        }
    }
    Ok(CommandResult::verdict(
        passed,
        json!({ "passed": passed, "levels": rows }),
    ))
}

fn bounds_table(max_d: u64, two_sided: Option<&[u64]>) -> Result<CommandResult> {
    if max_d == 0 {
        return Err(hyperinv::Error::Domain("--max-d must be at least 1".into()).into());
    }
    let rows = (1..=max_d)
        .map(|d| Ok(json!({ "d": d, "b": bounds_b(d)?, "i": bounds_i(d)? })))
        .collect::<hyperinv::Result<Vec<_>>>()?;
    let mut payload = json!({ "rows": rows });
    if let Some([d1, d2]) = two_sided {
        let r: BoundReport = bounds_b2(*d1, *d2)?;
        payload["two_sided"] = serde_json::to_value(r)?;
    }
    Ok(CommandResult::ok(payload).layout(crate::commands::Layout::BoundsTable))
}

fn outcome_payload<W>(o: &SearchOutcome<W>, witness: Value) -> Value {
    json!({
        "best": o.best,
        "witness": witness,
        "exhaustive": o.exhaustive,
        "budget_exhausted": o.budget_exhausted,
        "max_members": o.max_members,
        "max_part_size": o.max_part_size,
        "seeds": o.seeds,
        "nodes": o.nodes,
    })
}

fn run_search(args: &SearchArgs) -> Result<CommandResult> {
    let cfg = SearchConfig {
        max_members: args.max_members,
        max_part_size: args.max_part_size,
        budget: budget_of(args.budget)?,
    };
    let (payload, partial) = match args.quantity {
        Quantity::B => {
            let o = search::search_b(args.d, &cfg)?;
            (
                outcome_payload(&o, serde_json::to_value(CoverDoc::from(&o.witness))?),
                o.budget_exhausted,
            )
        }
        Quantity::C => {
            let o = search::search_c(args.d, &cfg)?;
            (
                outcome_payload(&o, serde_json::to_value(CoverDoc::from(&o.witness))?),
                o.budget_exhausted,
            )
        }
        Quantity::I => {
            let o = search::search_i(args.d, &cfg)?;
            (
                outcome_payload(&o, serde_json::to_value(HypergraphDoc::from(&o.witness))?),
                o.budget_exhausted,
            )
        }
    };
    let status = if partial { Status::Partial } else { Status::Ok };
    let mut out = CommandResult::new(status, payload);
    if partial {
        out = out.note("time budget exhausted; result is a lower bound");
    }
    Ok(out)
}

fn solve_general(doc: &InstanceDoc, budget: Budget) -> Result<CommandResult> {
    let inst = GeneralCoverInstance::from_doc(doc)?;
    Ok(
        match search::solve_general_cover(&inst, budget_of(budget)?)? {
            Some(sol) => {
                let members: Vec<Vec<String>> = sol
                    .members
                    .iter()
                    .map(|&i| {
                        inst.candidates[i]
                            .iter()
                            .map(|x| inst.ground[x].clone())
                            .collect()
                    })
                    .collect();
                CommandResult::ok(json!({
                    "feasible": true,
                    "size": sol.size,
                    "candidate_indices": sol.members,
                    "members": members,
                }))
            }
            None => CommandResult::verdict(false, json!({ "feasible": false })),
        },
    )
}

#[derive(Serialize)]
struct Check {
    name: String,
    expected: String,
    observed: String,
    passed: bool,
}

fn check(name: &str, expected: impl ToString, observed: impl ToString, passed: bool) -> Check {
    Check {
        name: name.into(),
        expected: expected.to_string(),
        observed: observed.to_string(),
        passed,
    }
}

fn repro() -> Result<CommandResult> {
    let mut checks = Vec::new();
    let b1 = search::search_b(1, &SearchConfig::default())?;
    checks.push(check(
        "b(1) exhaustive",
        1,
        b1.best,
        b1.best == 1 && b1.exhaustive,
    ));
    let c1 = search::search_c(1, &SearchConfig::default())?;
    checks.push(check("c(1)", 1, c1.best, c1.best == 1));
    let i1 = search::search_i(1, &SearchConfig::default())?;
    checks.push(check("i(1) within caps", 1, i1.best, i1.best == 1));

    let b2 = search::search_b(2, &SearchConfig::with_caps(4, 10))?;
    checks.push(check(
        "b(2) exhaustive",
        4,
        b2.best,
        b2.best == 4 && b2.exhaustive,
    ));
    let h2 = constructions::lower_bound_cover(2)?;
    let iso = is_isomorphic(&b2.witness, &h2)?;
    checks.push(check(
        "b(2) witness isomorphic to the construction",
        true,
        iso,
        iso,
    ));
    let c2 = search::search_c(2, &SearchConfig::default())?;
    checks.push(check(
        "c(2) exhaustive",
        3,
        c2.best,
        c2.best == 3 && c2.exhaustive,
    ));
    let i2 = search::search_i(2, &SearchConfig::with_caps(4, 9))?;
    checks.push(check(
        "i(2) within caps (edges 4, vertices 9)",
        3,
        i2.best,
        i2.best == 3,
    ));

    let triangle =
        CoverFamily::complete(&["x", "y", "z"], &[&["x", "y"], &["y", "z"], &["x", "z"]])?;
    let padded = constructions::cover_to_critical(&triangle)?;
    let critical = invertibility::is_invertibility_critical(&padded);
    checks.push(check(
        "padded triangle is critical",
        true,
        critical,
        critical,
    ));

    let k4 = constructions::bipartite_to_complete_cover(&h2)?;
    let c3_lower = if cover::is_minimal_edge_cover(&k4) && k4.max_degree() <= 3 {
        k4.len()
    } else {
        0
    };
    let chain = c2.best <= i2.best && i2.best <= b2.best && b2.best <= c3_lower;
    checks.push(check(
        "c(2) <= i(2) <= b(2) <= c(3)",
        "chain holds",
        format!(
            "{} <= {} <= {} <= (c(3) >= {c3_lower})",
            c2.best, i2.best, b2.best
        ),
        chain,
    ));

    for (d, lo, hi) in [(1u64, 1u64, 1u64), (2, 4, 4), (3, 10, 21), (4, 22, 106)] {
        let r = bounds_b(d)?;
        let observed = format!("{}/{}", r.lower, r.upper);
        checks.push(check(
            &format!("b({d}) bounds"),
            format!("{lo}/{hi}"),
            observed,
            r.lower == lo.into() && r.upper == hi.into(),
        ));
    }
    let b23 = bounds_b2(2, 3)?;
    checks.push(check(
        "b(2,3) closed-form upper",
        5,
        &b23.upper,
        b23.upper == 5u8.into(),
    ));
    for d in 1..=5u32 {
        let c = constructions::lower_bound_cover(d)?;
        let expected = 3 * (1usize << (d - 1)) - 2;
        let ok = c.len() == expected && cover::is_minimal_edge_cover(&c);
        checks.push(check(
            &format!("construction size d={d}"),
            expected,
            c.len(),
            ok,
        ));
    }
    for d in 2..=4u32 {
        let c = cover::prune_nonessential(&constructions::lower_bound_cover(d)?)?;
        let ok = audit::audit_upper_bound(&c)
            .and_then(|t| audit::level_bounds_check(&t, d as usize, d as usize))
            .is_ok();
        checks.push(check(
            &format!("audit d={d}"),
            "pass",
            if ok { "pass" } else { "fail" },
            ok,
        ));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(
        CommandResult::verdict(passed, json!({ "passed": passed, "checks": checks }))
            .layout(Layout::Checks),
    )
}
