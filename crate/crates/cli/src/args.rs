use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cubefree",
    version,
    about = "Exact search, constructions and claim verification for cube-free and pattern-free sets"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Result cache file.
    #[arg(long, global = true, env = "CUBEFREE_CACHE", value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Worker threads for searches and sweeps (default: all cores).
    #[arg(long, global = true, value_name = "W", value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a set avoids a pattern.
    Check(CheckArgs),
    /// Exact maximum size of a pattern-free set.
    Max(MaxArgs),
    /// Check a catalogued claim over a parameter range.
    Verify(VerifyArgs),
    /// Print an explicit construction.
    Construct(ConstructArgs),
    /// Inspect or clear the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("ambient").required(true).args(["cyclic", "interval"])))]
#[command(group(ArgGroup::new("pattern").required(true).args(["d", "cube", "pair", "diag", "diag0"])))]
pub struct ProblemArgs {
    /// Work in Z_N.
    #[arg(long, value_name = "N")]
    pub cyclic: Option<u64>,
    /// Work in [N] = {1, ..., N}.
    #[arg(long, value_name = "N")]
    pub interval: Option<u64>,
    /// Cube dimension (same as --cube).
    #[arg(long, value_name = "D")]
    pub d: Option<u32>,
    /// Forbid projective D-cubes.
    #[arg(long, value_name = "D")]
    pub cube: Option<u32>,
    /// Forbid {x, Dx}.
    #[arg(long, value_name = "D")]
    pub pair: Option<u32>,
    /// Forbid {x, 2x, ..., (D-1)x} for nonzero x.
    #[arg(long, value_name = "D")]
    pub diag: Option<u32>,
    /// As --diag, with x = 0 also forbidden (so 0 is never in the set).
    #[arg(long, value_name = "D")]
    pub diag0: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Elements as a comma list, or @FILE.
    #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
    pub set: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Brute,
    Bnb,
    Chain,
    Graph,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Largest N the exact solver accepts without --force.
    #[arg(long, value_name = "K")]
    pub cap: Option<u32>,
    /// Run past the configured cap (hard limits still apply).
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MaxArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Stop branch and bound after this many seconds; the result is then
    /// flagged non-optimal and not cached.
    #[arg(long, value_name = "SECONDS")]
    pub time_limit: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Claim id, or `all` for every claim at its default parameters.
    #[arg(required_unless_present = "list")]
    pub claim: Option<String>,
    /// List the claim catalogue.
    #[arg(long)]
    pub list: bool,
    #[arg(long = "N", value_name = "RANGE")]
    pub n: Option<String>,
    #[arg(long, value_name = "RANGE")]
    pub d: Option<String>,
    #[arg(long, value_name = "RANGE")]
    pub p: Option<String>,
    #[arg(long, value_name = "RANGE")]
    pub l: Option<String>,
    /// Explicit (N,d) points.
    #[arg(long, value_name = "LIST")]
    pub pairs: Option<String>,
    /// Explicit (p,l,d) points.
    #[arg(long, value_name = "LIST")]
    pub triples: Option<String>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionName {
    Residue,
    Interval,
    Alternating,
    Chains,
    Layers,
    Blocks,
    Matrix,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: ConstructionName,
    #[arg(long = "N", value_name = "N")]
    pub n: Option<u64>,
    #[arg(long, value_name = "D")]
    pub d: Option<u64>,
    #[arg(long, value_name = "P")]
    pub p: Option<u64>,
    #[arg(long, value_name = "L")]
    pub l: Option<u32>,
    /// Largest m listed by `matrix`.
    #[arg(long, value_name = "M")]
    pub upto: Option<u64>,
    /// Place the interval construction in Z_N instead of [N].
    #[arg(long)]
    pub cyclic: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CacheAction {
    /// Print every record.
    Show,
    /// Delete the cache file.
    Clear,
    /// Print the cache file path.
    Path,
}
