use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use intermediacy::baselines::MainPathVariant;
use intermediacy::analysis::CorrelationKind;
use intermediacy::exact::DEFAULT_MAX_EDGES;
use intermediacy::montecarlo::DEFAULT_SAMPLES;
use intermediacy::{Estimator, MethodChoice};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "intermediacy", version, about = "Intermediacy of publications between a source and a target")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Rank nodes by intermediacy
    Score(ScoreArgs),
    /// Probability of an active source-target path over a grid of p
    Sweep(SweepArgs),
    /// Percolation starting value p = n / (2m)
    SuggestP(PlainArgs),
    /// Correlations between scores at several p and citation/reference counts
    Correlate(CorrelateArgs),
    /// Cumulative distribution of scores at several p
    Cdf(DistributionArgs),
    /// Main path by search path count
    Mainpath(MainPathArgs),
    /// Expected number of active source-target paths through each node
    Epc(PointArgs),
    /// Source-target resistance over the paths through each node
    Resistance(PlainArgs),
    /// Compare exact scores with Monte Carlo estimates on a small graph
    ExactCheck(ExactCheckArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Score(_) => "score",
            Command::Sweep(_) => "sweep",
            Command::SuggestP(_) => "suggest-p",
            Command::Correlate(_) => "correlate",
            Command::Cdf(_) => "cdf",
            Command::Mainpath(_) => "mainpath",
            Command::Epc(_) => "epc",
            Command::Resistance(_) => "resistance",
            Command::ExactCheck(_) => "exact-check",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Score(a) => &a.output,
            Command::Sweep(a) => &a.output,
            Command::SuggestP(a) | Command::Resistance(a) => &a.output,
            Command::Correlate(a) => &a.output,
            Command::Cdf(a) => &a.output,
            Command::Mainpath(a) => &a.output,
            Command::Epc(a) => &a.output,
            Command::ExactCheck(a) => &a.output,
        }
    }

    pub fn sampling(&self) -> &SamplingArgs {
        match self {
            Command::Score(a) => &a.sampling,
            Command::Sweep(a) => &a.sampling,
            Command::SuggestP(a) | Command::Resistance(a) => &a.sampling,
            Command::Correlate(a) => &a.sampling,
            Command::Cdf(a) => &a.sampling,
            Command::Mainpath(a) => &a.sampling,
            Command::Epc(a) => &a.sampling,
            Command::ExactCheck(a) => &a.sampling,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphInput {
    /// Tab-separated edge list, one `citing<TAB>cited` pair per line
    #[arg(long)]
    pub edges: PathBuf,

    /// Optional node metadata CSV with columns id,label,year
    #[arg(long)]
    pub nodes: Option<PathBuf>,

    /// Source node id (the recent publication)
    #[arg(long)]
    pub source: String,

    /// Target node id (the old publication)
    #[arg(long)]
    pub target: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Auto,
    Exact,
    Mc,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SamplingArgs {
    /// Monte Carlo replicates per evaluation point
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,

    /// Base random seed
    #[arg(long, env = "INTERMEDIACY_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Worker threads; results do not depend on it [default: available cores]
    #[arg(long)]
    pub workers: Option<usize>,

    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,

    /// Largest closure (in edges) evaluated exactly by `--method auto`
    #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
    pub max_edges: usize,
}

impl SamplingArgs {
    pub fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn estimator(&self) -> Estimator {
        Estimator {
            choice: match self.method {
                MethodArg::Auto => MethodChoice::Auto,
                MethodArg::Exact => MethodChoice::Exact,
                MethodArg::Mc => MethodChoice::MonteCarlo,
            },
            max_edges: self.max_edges,
            samples: self.samples,
            seed: self.seed,
            workers: self.workers(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,

    /// Directory receiving the output file and its manifest
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub input: GraphInput,

    /// Reference p used to order the table
    #[arg(long, default_value_t = 0.1)]
    pub p: f64,

    /// Additional p values reported as extra columns (comma-separated)
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Vec<f64>,

    /// Number of ranked rows below the source and target
    #[arg(long, default_value_t = 10)]
    pub top: usize,

    /// Also write the edges among the top K nodes, source and target
    #[arg(long, value_name = "K")]
    pub subnet: Option<usize>,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: GraphInput,

    /// Comma-separated p values [default: 50 log-spaced points in 0.01..0.99]
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Vec<f64>,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PlainArgs {
    #[command(flatten)]
    pub input: GraphInput,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PointArgs {
    #[command(flatten)]
    pub input: GraphInput,

    #[arg(long, default_value_t = 0.1)]
    pub p: f64,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationArg {
    Spearman,
    Pearson,
}

impl From<CorrelationArg> for CorrelationKind {
    fn from(arg: CorrelationArg) -> Self {
        match arg {
            CorrelationArg::Spearman => CorrelationKind::Spearman,
            CorrelationArg::Pearson => CorrelationKind::Pearson,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CorrelateArgs {
    #[command(flatten)]
    pub input: GraphInput,

    /// Comma-separated p values [default: 0.1,0.3,0.5,0.7,0.9]
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Vec<f64>,

    #[arg(long, value_enum, default_value_t = CorrelationArg::Spearman)]
    pub kind: CorrelationArg,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DistributionArgs {
    #[command(flatten)]
    pub input: GraphInput,

    /// Comma-separated p values [default: 0.1,0.3,0.5,0.7,0.9]
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Vec<f64>,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Local,
    Global,
}

impl From<VariantArg> for MainPathVariant {
    fn from(arg: VariantArg) -> Self {
        match arg {
            VariantArg::Local => MainPathVariant::Local,
            VariantArg::Global => MainPathVariant::Global,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MainPathArgs {
    #[command(flatten)]
    pub input: GraphInput,

    #[arg(long, value_enum, default_value_t = VariantArg::Global)]
    pub variant: VariantArg,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExactCheckArgs {
    /// Edge list; omit together with source and target to use --random
    #[arg(long, requires_all = ["source", "target"], conflicts_with = "random")]
    pub edges: Option<PathBuf>,

    #[arg(long)]
    pub nodes: Option<PathBuf>,

    #[arg(long)]
    pub source: Option<String>,

    #[arg(long)]
    pub target: Option<String>,

    /// Generate a random closure with this many edges from the seed
    #[arg(long, value_name = "M", required_unless_present = "edges")]
    pub random: Option<usize>,

    #[arg(long, default_value_t = 0.1)]
    pub p: f64,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}
