//! Command-line interface definition.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cechmv",
    version,
    about = "Influence maximization via community-hierarchy-based mutual voting"
)]
pub struct Cli {
    /// Edge-list file (two tokens per line, # or % comments). Relative
    /// paths that do not exist are retried against $CECHMV_DATA_DIR.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Optional TOML config file; command-line flags take precedence
    /// over its values, which take precedence over built-in defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the per-node score table (ks, nc, hce, dschi) as CSV
    Score(ScoreArgs),
    /// Detect communities and emit the partition as JSON
    Communities(CommunitiesArgs),
    /// Select seed nodes with the mutual-voting pipeline
    Select(SelectArgs),
    /// Evaluate a seed set with the Monte-Carlo SIR simulator
    Simulate(SimulateArgs),
    /// Benchmark selection methods and compute balance indices
    Benchmark(BenchmarkArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetectorChoice {
    Louvain,
    Leiden,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyChoice {
    Lazy,
    Eager,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExponentChoice {
    Algorithm,
    Equation,
}

/// Knobs shared by every command that scores nodes.
#[derive(Debug, Clone, Args)]
pub struct ScoringArgs {
    /// Weight of entropy vs coreness in the node score, in (0, 1)
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Community detector
    #[arg(long, value_enum)]
    pub detector: Option<DetectorChoice>,

    /// Modularity resolution of the detector
    #[arg(long)]
    pub resolution: Option<f64>,

    /// Use a fixed partition file instead of running detection
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

/// Knobs shared by every command that runs seed selection.
#[derive(Debug, Clone, Args)]
pub struct SelectionArgs {
    /// Vote-weight base (> 1)
    #[arg(long)]
    pub beta: Option<f64>,

    /// Suppression index in (0.1, 1]
    #[arg(long)]
    pub mu: Option<f64>,

    /// Score update strategy
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyChoice>,

    /// Vote-weight exponent variant
    #[arg(long = "vote-exponent", value_enum)]
    pub vote_exponent: Option<ExponentChoice>,

    /// Restrict the lazy staleness check to the current round only
    #[arg(long)]
    pub lsus_paper_literal: bool,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,

    /// Detection RNG seed
    #[arg(long)]
    pub rng_seed: Option<u64>,

    /// Write CSV here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CommunitiesArgs {
    /// Community detector
    #[arg(long, value_enum)]
    pub detector: Option<DetectorChoice>,

    /// Modularity resolution of the detector
    #[arg(long)]
    pub resolution: Option<f64>,

    /// Detection RNG seed
    #[arg(long)]
    pub rng_seed: Option<u64>,

    /// Write JSON here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,

    #[command(flatten)]
    pub selection: SelectionArgs,

    /// Number of seeds to select
    #[arg(long, conflicts_with = "rho")]
    pub seeds: Option<usize>,

    /// Seed ratio: select max(1, floor(rho * |V|)) seeds
    #[arg(long)]
    pub rho: Option<f64>,

    /// Detection RNG seed
    #[arg(long)]
    pub rng_seed: Option<u64>,

    /// Write JSON here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Infected rate lambda = infect_prob / recover_prob
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Monte-Carlo run count
    #[arg(long)]
    pub runs: Option<usize>,

    /// Step cap per run (default 10 * |V|)
    #[arg(long)]
    pub max_steps: Option<usize>,

    /// Simulation RNG seed (also used for detection when selecting)
    #[arg(long)]
    pub rng_seed: Option<u64>,

    /// Seed ratio for the selection pipeline
    #[arg(long, conflicts_with = "seeds_file")]
    pub rho: Option<f64>,

    /// Read seeds from a file (select JSON output or one label per line)
    #[arg(long)]
    pub seeds_file: Option<PathBuf>,

    #[command(flatten)]
    pub scoring: ScoringArgs,

    #[command(flatten)]
    pub selection: SelectionArgs,

    /// Write JSON here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Also write the averaged trajectory as CSV (t, f)
    #[arg(long)]
    pub trajectory_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// Comma-separated methods: cechmv, degree, kshell, nc, hindex, voterank
    #[arg(long)]
    pub methods: Option<String>,

    /// Infected rate lambda
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Monte-Carlo run count per method
    #[arg(long)]
    pub runs: Option<usize>,

    /// Seed ratio
    #[arg(long)]
    pub rho: Option<f64>,

    /// RNG seed shared by detection and simulation
    #[arg(long)]
    pub rng_seed: Option<u64>,

    #[command(flatten)]
    pub scoring: ScoringArgs,

    #[command(flatten)]
    pub selection: SelectionArgs,

    /// Write the record CSV here instead of stdout
    #[arg(long)]
    pub output_csv: Option<PathBuf>,

    /// Also write a JSON mirror of the records
    #[arg(long)]
    pub output_json: Option<PathBuf>,

    /// Also write per-method trajectories as plot-ready CSV
    #[arg(long)]
    pub trajectories_csv: Option<PathBuf>,
}
