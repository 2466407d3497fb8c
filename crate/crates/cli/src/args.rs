use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "covertime",
    version,
    about = "Random-walk cover time and effective resistance experiments"
)]
pub struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true, env = "COVERTIME_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Write a generated graph as a normalized edge list.
    Generate(GenerateArgs),
    /// Structural, resistance and cover statistics of an edge list.
    Analyze(AnalyzeArgs),
    /// Check resistance identities and bounds for a deterministic family.
    Verify(VerifyArgs),
    /// Resistance diameter and cover time across a size schedule.
    Study(StudyArgs),
    /// Resistance table and diameter of one graph.
    Resistance(ResistanceArgs),
    /// Cover-time estimates of one graph, per start node.
    Cover(CoverArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Apollonian,
    Pseudofractal,
    Ba,
    Complete,
    Cycle,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundedFamilyArg {
    Apollonian,
    Pseudofractal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Auto,
    Dense,
    Solver,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelArg {
    Token,
    Integer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverArg {
    Mc,
    Exact,
    None,
}

/// Parameters selecting one member of a family.
#[derive(Clone, Debug, Args, Serialize)]
pub struct FamilyParams {
    /// Generation for apollonian / pseudofractal.
    #[arg(long)]
    pub g: Option<u32>,
    /// Node count for ba / complete / cycle / path.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edges per new node (ba).
    #[arg(long)]
    pub m: Option<usize>,
    /// Initial clique size (ba); defaults to m + 1.
    #[arg(long)]
    pub m0: Option<usize>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct WalkArgs {
    /// Trials per start node.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Walk seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `all`, a count of sampled starts, or a comma-separated node list
    /// prefixed with `list:`.
    #[arg(long, default_value = "all")]
    pub starts: String,
    /// Per-trial step cap (default 10^4 N ln N).
    #[arg(long)]
    pub max_steps: Option<u64>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct MethodArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Relative residual target for the solver method.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub params: FamilyParams,
    /// Seed for random families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct AnalyzeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Row name (default: file stem).
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, value_enum, default_value_t = LabelArg::Token)]
    pub labels: LabelArg,
    #[command(flatten)]
    pub walk: WalkArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Structured JSON record destination (default: stderr).
    #[arg(long)]
    pub record: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub family: BoundedFamilyArg,
    /// Highest generation checked; every generation from 0 is included.
    #[arg(long)]
    pub g: u32,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Random pairs per generation for the sum rule.
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check this edge list in place of the generated graph at generation g.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct StudyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Size parameters: node counts, or generations for apollonian / pseudofractal.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Edges per new node (ba); several values sweep m.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    /// Graph seeds for random families.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u64>,
    /// Shorthand for seeds 0..replicates when --seeds is absent.
    #[arg(long, default_value_t = 1)]
    pub replicates: u64,
    #[arg(long, value_enum, default_value_t = CoverArg::Mc)]
    pub cover: CoverArg,
    #[command(flatten)]
    pub walk: WalkArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A graph read from a file or generated on the fly.
#[derive(Clone, Debug, Args, Serialize)]
pub struct GraphSource {
    #[arg(long = "in", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[command(flatten)]
    pub params: FamilyParams,
    /// Seed for random families.
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    #[arg(long, value_enum, default_value_t = LabelArg::Token)]
    pub labels: LabelArg,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct ResistanceArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Write all pairs `i,j,omega` (i < j) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct CoverArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub walk: WalkArgs,
    /// Also compute exact cover times (at most 16 nodes).
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
