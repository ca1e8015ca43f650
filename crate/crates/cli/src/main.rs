//! `hyperinv` command-line front end.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "hyperinv",
    version,
    about = "Hypergraph invertibility and minimal edge covers"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invertibility of a hypergraph.
    #[command(subcommand)]
    Invert(InvertCmd),
    /// Edge-cover verification.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Extremal constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Reductions between critical hypergraphs and complete or bipartite covers.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Families of minimal covers and bipartite edge covers.
    #[command(subcommand)]
    Covers(CoversCmd),
    /// Replay the upper-bound counting argument on a cover.
    #[command(subcommand)]
    Audit(AuditCmd),
    /// Closed-form bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Exact small-scale search for b, c or i.
    Search(SearchArgs),
    /// Exact restricted covering solver.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Reproduce the known small values and bound identities.
    #[command(subcommand)]
    Repro(ReproCmd),
}

#[derive(Subcommand, Debug)]
pub enum InvertCmd {
    /// Decide invertibility; prints an inverting permutation or a deficiency set.
    Check { hypergraph: PathBuf },
    /// Decide invertibility criticality.
    Critical { hypergraph: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Check that a family is a minimal edge cover of its host.
    Verify { cover: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// The recursive cover of K_{2^(d-1), 2^(d-1)} with 3·2^(d-1) - 2 members.
    LowerBound {
        #[arg(long)]
        d: u32,
    },
    /// Two copies of a minimal bipartite cover plus two crossing members.
    Double { cover: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ReduceCmd {
    /// Pad a minimal cover of a complete graph into a critical hypergraph.
    CoverToCritical { cover: PathBuf },
    /// Project a critical hypergraph onto a minimal bipartite cover.
    CriticalToCover { hypergraph: PathBuf },
    /// Turn a minimal bipartite cover into a minimal cover of the complete graph.
    BipartiteToComplete {
        cover: PathBuf,
        /// Try dropping the part-2 member before the part-1 member.
        #[arg(long)]
        part2_first: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoversCmd {
    /// Family plus minimal covers -> bipartite edge cover.
    ToEdgeCover { families: PathBuf },
    /// Bipartite edge cover -> family plus minimal covers (prunes first if needed).
    FromEdgeCover { cover: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum AuditCmd {
    /// Audit a minimal bipartite cover (non-essential elements are pruned first).
    UpperBound {
        cover: PathBuf,
        /// Repeat the audit from every part-1 starting vertex.
        #[arg(long)]
        all_roots: bool,
        /// Part-1 degree bound for the level checks (default: actual).
        #[arg(long)]
        d1: Option<usize>,
        /// Part-2 degree bound for the level checks (default: actual).
        #[arg(long)]
        d2: Option<usize>,
    },
    /// Re-check the set-pair families of an audit trace or report.
    Setpairs { trace: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Lower and upper bounds for b and i, d = 1..max-d.
    Table {
        #[arg(long)]
        max_d: u64,
        /// Also report the two-sided bound for degrees (d1, d2).
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        two_sided: Option<Vec<u64>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    B,
    C,
    I,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub d: u32,
    /// Member cap (edges for `i`); defaults to the upper bound, at most 24.
    #[arg(long, visible_alias = "max-edges")]
    pub max_members: Option<usize>,
    /// Part-size cap (vertices for `c` and `i`).
    #[arg(long, visible_alias = "max-vertices")]
    pub max_part_size: Option<usize>,
    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Budget {
    /// Time budget in seconds.
    #[arg(long, env = "HYPERINV_BUDGET_SECS")]
    pub budget_secs: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum SolveCmd {
    /// Largest minimal cover of the ground set from the candidates, within caps.
    General {
        instance: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReproCmd {
    /// Check the exact values for d = 1, 2 and the bound tables.
    PaperValues,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli.command);
    let code = result.exit_code();
    render::emit(&result, cli.format);
    ExitCode::from(code)
}
