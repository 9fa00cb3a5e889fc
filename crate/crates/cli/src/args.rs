//! Command-line surface. Every flag can also be set through a `DOUBLEJUMP_*`
//! environment variable; an explicit flag wins.

use crate::output::VERSION;
use clap::builder::BoolishValueParser;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use doublejump::local_limit::LambdaConvention;
use doublejump::supercritical::LogBase;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "doublejump", version = VERSION, about = "Seeded experiments on the logic of sparse random graphs G(n, c/n)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Master seed; trial i draws from an independent stream derived from it.
    #[arg(long, global = true, default_value_t = 0, env = "DOUBLEJUMP_SEED")]
    pub seed: u64,
    /// Worker threads for trials. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, env = "DOUBLEJUMP_THREADS")]
    pub threads: usize,
    /// Write records to this file instead of stdout.
    #[arg(long, global = true, env = "DOUBLEJUMP_OUT")]
    pub out: Option<PathBuf>,
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true, env = "DOUBLEJUMP_QUIET", value_parser = BoolishValueParser::new())]
    pub quiet: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Sample G(n, c/n).
    Sample(SampleArgs),
    /// Cycle counts against Poisson means, or a census of small unicyclic components.
    Census(CensusArgs),
    /// Monte Carlo estimate of Pr[G(n, c/n) satisfies a sentence].
    McProb(McProbArgs),
    /// Limit probability interval of a sentence for c < 1.
    Decide(DecideArgs),
    /// Build the arithmetized graph H.
    BuildH(BuildHArgs),
    /// Check the arithmetization of a stored H.
    VerifyH(VerifyHArgs),
    /// Parity table of the nonconvergence sentence over a range of n.
    Nonconv(NonconvArgs),
    /// Build, detect or count clean topological cliques.
    Ctk(CtkArgs),
    /// First and second moment constraints, or the recurrence table.
    Moments(MomentsArgs),
    /// Evaluate closed-form limit expressions.
    Closedform(ClosedformArgs),
    /// Transfer test of first-order sentences between R-equivalent graphs.
    Transfer(TransferArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sample(_) => "sample",
            Command::Census(_) => "census",
            Command::McProb(_) => "mc-prob",
            Command::Decide(_) => "decide",
            Command::BuildH(_) => "build-h",
            Command::VerifyH(_) => "verify-h",
            Command::Nonconv(_) => "nonconv",
            Command::Ctk(_) => "ctk",
            Command::Moments(_) => "moments",
            Command::Closedform(_) => "closedform",
            Command::Transfer(_) => "transfer",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    /// One JSON record.
    Json,
    /// Edge-list text with a `#` header.
    Edges,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    LabeledEmbedding,
    VFactorial,
}

impl From<Convention> for LambdaConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::LabeledEmbedding => LambdaConvention::LabeledEmbedding,
            Convention::VFactorial => LambdaConvention::VFactorial,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Base {
    E,
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
    #[value(name = "10")]
    #[serde(rename = "10")]
    Ten,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::E => LogBase::E,
            Base::Two => LogBase::Two,
            Base::Ten => LogBase::Ten,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusKind {
    /// Cycle lengths and B(C, R) types against their Poisson means.
    Cycles,
    /// Unicyclic components by isomorphism type.
    Components,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    /// Number of vertices.
    #[arg(long, env = "DOUBLEJUMP_N")]
    pub n: usize,
    /// Edge probability is c/n.
    #[arg(long, env = "DOUBLEJUMP_C")]
    pub c: f64,
    /// Output format of the graph.
    #[arg(long, value_enum, default_value_t = GraphFormat::Json, env = "DOUBLEJUMP_FORMAT")]
    pub format: GraphFormat,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    /// Edge probability is c/n.
    #[arg(long, env = "DOUBLEJUMP_C")]
    pub c: f64,
    /// Number of vertices.
    #[arg(long, env = "DOUBLEJUMP_N")]
    pub n: usize,
    /// Number of independent samples.
    #[arg(long, default_value_t = 2000, env = "DOUBLEJUMP_TRIALS")]
    pub trials: u64,
    /// Ball radius R around each cycle.
    #[arg(long = "R", default_value_t = 3, env = "DOUBLEJUMP_R")]
    pub radius: usize,
    /// What to count.
    #[arg(long, value_enum, default_value_t = CensusKind::Cycles, env = "DOUBLEJUMP_KIND")]
    pub kind: CensusKind,
    /// Normalisation of the Poisson means.
    #[arg(long, value_enum, default_value_t = Convention::LabeledEmbedding, env = "DOUBLEJUMP_CONVENTION")]
    pub convention: Convention,
    /// Pass threshold in standard errors.
    #[arg(long, default_value_t = 3.0, env = "DOUBLEJUMP_MULTIPLIER")]
    pub multiplier: f64,
    /// Largest component size counted (components).
    #[arg(long, default_value_t = 4, env = "DOUBLEJUMP_MAX_SIZE")]
    pub max_size: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct McProbArgs {
    /// Sentence text, a file holding it, or a builtin name (see `closedform`).
    #[arg(long, env = "DOUBLEJUMP_SENTENCE")]
    pub sentence: String,
    /// Edge probability is c/n.
    #[arg(long, env = "DOUBLEJUMP_C")]
    pub c: f64,
    /// Number of vertices.
    #[arg(long, env = "DOUBLEJUMP_N")]
    pub n: usize,
    /// Number of independent samples.
    #[arg(long, default_value_t = 2000, env = "DOUBLEJUMP_TRIALS")]
    pub trials: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct DecideArgs {
    /// Sentence text, a file holding it, or a builtin name.
    #[arg(long, env = "DOUBLEJUMP_SENTENCE")]
    pub sentence: String,
    /// Edge probability is c/n.
    #[arg(long, env = "DOUBLEJUMP_C")]
    pub c: f64,
    /// Total probability mass the interval may leave unaccounted.
    #[arg(long, default_value_t = 0.02, env = "DOUBLEJUMP_EPS")]
    pub eps: f64,
    /// Copies of each tree type in the representative background
    /// [default: 3, or 1 for sentences with set quantifiers].
    #[arg(long, env = "DOUBLEJUMP_MREP")]
    pub mrep: Option<usize>,
    /// Largest background tree size [default: 5, or 2 for sentences with set quantifiers].
    #[arg(long, env = "DOUBLEJUMP_SMAX")]
    pub smax: Option<usize>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DecideResolved<'a> {
    pub sentence: &'a str,
    pub c: f64,
    pub eps: f64,
    pub mrep: usize,
    pub smax: usize,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("size").required(true).args(["w1", "n"])))]
pub struct BuildHArgs {
    /// Spacing of the arithmetization points.
    #[arg(long = "K", env = "DOUBLEJUMP_BIG_K")]
    pub big_k: usize,
    /// Number of arithmetization points, directly.
    #[arg(long, env = "DOUBLEJUMP_W1")]
    pub w1: Option<u64>,
    /// Graph size from which w = K·round(k1 log n / K) is derived.
    #[arg(long, env = "DOUBLEJUMP_N")]
    pub n: Option<f64>,
    /// Multiplier in w = K·round(k1 log n / K).
    #[arg(long, default_value_t = 5.0, env = "DOUBLEJUMP_K1")]
    pub k1: f64,
    /// Base of the logarithm in the path length.
    #[arg(long, value_enum, default_value_t = Base::E, env = "DOUBLEJUMP_LOG_BASE")]
    pub log_base: Base,
    /// Output format of the graph.
    #[arg(long, value_enum, default_value_t = GraphFormat::Json, env = "DOUBLEJUMP_FORMAT")]
    pub format: GraphFormat,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyHArgs {
    /// A `build-h` JSON record, or an edge list when `--meta` is given. Defaults to stdin.
    #[arg(long, env = "DOUBLEJUMP_INPUT")]
    pub input: Option<PathBuf>,
    /// Metadata JSON accompanying an edge-list input.
    #[arg(long, env = "DOUBLEJUMP_META")]
    pub meta: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct NonconvArgs {
    /// Edge probability is c/n.
    #[arg(long, env = "DOUBLEJUMP_C")]
    pub c: f64,
    /// Spacing of the arithmetization points.
    #[arg(long = "K", env = "DOUBLEJUMP_BIG_K")]
    pub big_k: usize,
    /// Multiplier in w = K·round(k1 log n / K).
    #[arg(long, default_value_t = 5.0, env = "DOUBLEJUMP_K1")]
    pub k1: f64,
    /// Comma-separated log n values; defaults to 0.25, 0.5, ..., 8.
    #[arg(long, value_delimiter = ',', env = "DOUBLEJUMP_LOG_N")]
    pub log_n: Vec<f64>,
    /// Base of the logarithm in the path length.
    #[arg(long, value_enum, default_value_t = Base::E, env = "DOUBLEJUMP_LOG_BASE")]
    pub log_base: Base,
    /// Also search H exhaustively when it has at most this many vertices; 0 disables.
    #[arg(long, default_value_t = doublejump::supercritical::ak::AK_GENERIC_MAX_VERTICES, env = "DOUBLEJUMP_EXHAUSTIVE_MAX")]
    pub exhaustive_max: usize,
    /// Search step budget before giving up.
    #[arg(long, default_value_t = doublejump::supercritical::ak::AK_DEFAULT_BUDGET, env = "DOUBLEJUMP_BUDGET")]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("mode").required(true).args(["w", "input", "n"])))]
pub struct CtkArgs {
    /// Number of branch vertices.
    #[arg(long, env = "DOUBLEJUMP_K")]
    pub k: usize,
    /// Build CTK_k with paths of this length.
    #[arg(long, env = "DOUBLEJUMP_W")]
    pub w: Option<usize>,
    /// Detect CTK_k in this edge list.
    #[arg(long, env = "DOUBLEJUMP_INPUT")]
    pub input: Option<PathBuf>,
    /// Estimate the hit rate in G(n, c/n).
    #[arg(long, requires = "c", env = "DOUBLEJUMP_N")]
    pub n: Option<usize>,
    /// Edge probability is c/n.
    #[arg(long, env = "DOUBLEJUMP_C")]
    pub c: Option<f64>,
    /// Number of independent samples.
    #[arg(long, default_value_t = 200, env = "DOUBLEJUMP_TRIALS")]
    pub trials: u64,
    /// Search step budget before giving up.
    #[arg(long, default_value_t = doublejump::supercritical::ctk::CTK_DEFAULT_BUDGET, env = "DOUBLEJUMP_BUDGET")]
    pub budget: u64,
    /// Output format of the graph.
    #[arg(long, value_enum, default_value_t = GraphFormat::Json, env = "DOUBLEJUMP_FORMAT")]
    pub format: GraphFormat,
}

#[derive(Args, Debug, Serialize)]
pub struct MomentsArgs {
    /// Edge probability is c/n.
    #[arg(long, env = "DOUBLEJUMP_C")]
    pub c: f64,
    /// Number of vertices.
    #[arg(long, env = "DOUBLEJUMP_N")]
    pub n: f64,
    /// Summarize H(k1, K, n).
    #[arg(long = "K", conflicts_with_all = ["ctk", "m"], env = "DOUBLEJUMP_BIG_K")]
    pub big_k: Option<usize>,
    /// Multiplier in w = K·round(k1 log n / K).
    #[arg(long, default_value_t = 5.0, env = "DOUBLEJUMP_K1")]
    pub k1: f64,
    /// Base of the logarithm in the path length.
    #[arg(long, value_enum, default_value_t = Base::E, env = "DOUBLEJUMP_LOG_BASE")]
    pub log_base: Base,
    /// Summarize CTK_k with paths of length `--w`.
    #[arg(long, requires = "w", conflicts_with = "m", env = "DOUBLEJUMP_CTK")]
    pub ctk: Option<usize>,
    /// Length of each branch path.
    #[arg(long, env = "DOUBLEJUMP_W")]
    pub w: Option<usize>,
    /// Recurrence table for a planted graph on m vertices.
    #[arg(long, requires = "s_max", env = "DOUBLEJUMP_M")]
    pub m: Option<f64>,
    /// Largest path count s in the table.
    #[arg(long, env = "DOUBLEJUMP_S_MAX")]
    pub s_max: Option<usize>,
    /// Emit the recurrence table as CSV.
    #[arg(long, requires = "m", env = "DOUBLEJUMP_CSV", value_parser = BoolishValueParser::new())]
    pub csv: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ClosedformArgs {
    /// Expression in the closed-form syntax, e.g. `exp(q:-1/6 * c * c * c)`.
    #[arg(long, conflicts_with = "example", env = "DOUBLEJUMP_EXPR")]
    pub expr: Option<String>,
    /// Builtin example name; all builtins when neither this nor `--expr` is given.
    #[arg(long, env = "DOUBLEJUMP_EXAMPLE")]
    pub example: Option<String>,
    /// Comma-separated values of c.
    #[arg(long, value_delimiter = ',', default_value = "1", env = "DOUBLEJUMP_C")]
    pub c: Vec<f64>,
    /// Also evaluate the derivative in c.
    #[arg(long, env = "DOUBLEJUMP_DERIVATIVE", value_parser = BoolishValueParser::new())]
    pub derivative: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct TransferArgs {
    /// Ball radius R.
    #[arg(long = "R", default_value_t = 3, env = "DOUBLEJUMP_R")]
    pub radius: usize,
    /// Number of independent samples.
    #[arg(long, default_value_t = 700, env = "DOUBLEJUMP_TRIALS")]
    pub trials: u64,
}
