use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "sbmds", version, about = "Sparse Bayesian multidimensional scaling")]
pub struct Cli {
    /// JSON file of flag values; flags on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate true locations and noisy dissimilarities.
    Simulate(SimulateArgs),
    /// Sample the posterior of latent locations for a dissimilarity matrix.
    Fit(FitArgs),
    /// Compute MSE-bar, ESS and Hellinger metrics for a trace.
    Evaluate(EvaluateArgs),
    /// Time likelihood and gradient evaluations.
    Bench(BenchArgs),
    /// Procrustes-align trace snapshots and summarise each object.
    Align(AlignArgs),
    /// Print the log-likelihood and its gradient as JSON.
    Loglik(LoglikArgs),
    /// Run a preset simulation study.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Noise {
    Tnorm,
    Lognormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    Mh,
    Hmc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitKind {
    Cmds,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SummaryKind {
    Mean,
    Median,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Mse,
    Ess,
    Hellinger,
    Timing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// MSE-bar of full and banded fits against band count.
    Elbow,
    /// Data in higher dimensions embedded in two.
    Dimension,
    /// Elbow study with log-normal noise.
    Lognormal,
    /// Wall time and minimum ESS per hour against N.
    Efficiency,
    /// One-dimensional posterior consistency with landmarks growing like sqrt(N).
    Consistency,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct OutArgs {
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,

    /// Overwrite a non-empty output directory.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,

    #[arg(long, default_value_t = 2)]
    pub true_dim: usize,

    /// Also write a classical MDS embedding of the observations in this dimension.
    #[arg(long)]
    pub embed_dim: Option<usize>,

    #[arg(long, default_value_t = 0.2)]
    pub sigma_true: f64,

    #[arg(long, value_enum, default_value_t = Noise::Tnorm)]
    pub noise: Noise,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct FitArgs {
    /// Square dissimilarity matrix as CSV.
    #[arg(long, value_name = "FILE")]
    pub dissim: PathBuf,

    /// The input CSV starts with a header line.
    #[arg(long)]
    pub skip_header: bool,

    #[arg(long, default_value_t = 2)]
    pub embed_dim: usize,

    /// `full`, `banded:B`, `landmark:L` or `auto` (banded with ceil(D sqrt(N)) bands).
    #[arg(long)]
    pub coupling: String,

    #[arg(long, value_enum, default_value_t = Sampler::Hmc)]
    pub sampler: Sampler,

    #[arg(long, default_value_t = 110_000)]
    pub iterations: u64,

    #[arg(long, default_value_t = 10_000)]
    pub burnin: u64,

    #[arg(long, default_value_t = 100)]
    pub thin: u64,

    #[arg(long, default_value_t = 20)]
    pub leapfrog_steps: usize,

    /// Shuffle object order with this seed before fitting; output keeps the input order.
    #[arg(long, value_name = "SEED")]
    pub permute_rows: Option<u64>,

    #[arg(long, value_enum, default_value_t = InitKind::Cmds)]
    pub init: InitKind,

    /// Starting locations as an N x D CSV; overrides --init.
    #[arg(long, value_name = "FILE")]
    pub initial_locations: Option<PathBuf>,

    /// Initial proposal scale (MH) or step size (HMC).
    #[arg(long)]
    pub initial_step: Option<f64>,

    #[arg(long)]
    pub target_accept: Option<f64>,

    #[arg(long)]
    pub initial_sigma2: Option<f64>,

    /// Keep proposal scales fixed during burn-in.
    #[arg(long)]
    pub no_adapt: bool,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Evaluate likelihoods on one thread.
    #[arg(long)]
    pub serial: bool,

    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct EvaluateArgs {
    #[arg(long, value_name = "FILE")]
    pub trace: PathBuf,

    /// True distance matrix, required for `mse`.
    #[arg(long, value_name = "FILE")]
    pub truth_distances: Option<PathBuf>,

    /// Second trace, required for `hellinger`.
    #[arg(long, value_name = "FILE")]
    pub compare_trace: Option<PathBuf>,

    /// Scalar column compared by `hellinger`.
    #[arg(long, default_value = "sigma2")]
    pub column: String,

    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Metric::Mse, Metric::Ess])]
    pub metrics: Vec<Metric>,

    /// Columns entering the minimum ESS; all columns when omitted.
    #[arg(long, value_delimiter = ',')]
    pub monitor: Vec<String>,

    #[arg(long, default_value_t = 1000)]
    pub max_pairs: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,

    /// Coupling specs; `n-1` inside one is replaced per size, as in `banded:n-1`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub coupling_list: Vec<String>,

    #[arg(long, default_value_t = 5)]
    pub reps: usize,

    #[arg(long, default_value_t = 2)]
    pub dim: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Evaluate on one thread.
    #[arg(long)]
    pub serial: bool,

    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct AlignArgs {
    #[arg(long, value_name = "FILE")]
    pub trace: PathBuf,

    /// `first-sample`, or a CSV of N x D reference locations.
    #[arg(long, default_value = "first-sample")]
    pub reference: String,

    #[arg(long, value_enum, default_value_t = SummaryKind::Mean)]
    pub summary: SummaryKind,

    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct LoglikArgs {
    #[arg(long, value_name = "FILE")]
    pub dissim: PathBuf,

    #[arg(long, value_name = "FILE")]
    pub locations: PathBuf,

    #[arg(long)]
    pub sigma2: f64,

    #[arg(long, default_value = "full")]
    pub coupling: String,

    #[arg(long)]
    pub skip_header: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,

    /// Number of objects for fixed-size presets.
    #[arg(long, default_value_t = 100)]
    pub n: usize,

    /// Sizes for `efficiency` and `consistency`.
    #[arg(long, value_delimiter = ',', default_values_t = [50, 200])]
    pub n_list: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 5, 10, 20])]
    pub bands: Vec<usize>,

    /// Schemes for `efficiency`.
    #[arg(long, value_delimiter = ',', default_values_t = ["full".to_string(), "banded:10".to_string()])]
    pub coupling_list: Vec<String>,

    /// Generating dimensions for `dimension`.
    #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 6, 8, 10])]
    pub true_dims: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4, 5])]
    pub seeds: Vec<u64>,

    #[arg(long, default_value_t = 0.2)]
    pub sigma_true: f64,

    /// Landmarks are ceil(factor sqrt(N)) in `consistency`.
    #[arg(long, default_value_t = 2.0)]
    pub landmark_factor: f64,

    #[arg(long, value_enum, default_value_t = Sampler::Hmc)]
    pub sampler: Sampler,

    #[arg(long, default_value_t = 11_000)]
    pub iterations: u64,

    #[arg(long, default_value_t = 1_000)]
    pub burnin: u64,

    #[arg(long, default_value_t = 10)]
    pub thin: u64,

    #[arg(long, default_value_t = 20)]
    pub leapfrog_steps: usize,

    #[arg(long, default_value_t = 1000)]
    pub max_pairs: usize,

    /// Run cells one after another.
    #[arg(long)]
    pub serial: bool,

    #[command(flatten)]
    pub out: OutArgs,
}
