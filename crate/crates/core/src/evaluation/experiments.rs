//! Runners for the simulation studies: accuracy against band count, model
//! misspecification, efficiency, and posterior consistency in one dimension.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{
    align_trace, classical_mds, config_mse, mean_mse, min_ess, per_hour, simulate_dataset, MonitoredSeries,
    NoiseKind, SimSpec, Summary,
};
use crate::dissim::{CouplingScheme, LatentConfig};
use crate::error::{Error, Result};
use crate::likelihood::Execution;
use crate::rng;
use crate::samplers::{run_chain_with, Init, PriorSpec, SamplerConfig};

/// How a cell embeds its data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "scheme")]
pub enum Method {
    /// Classical MDS point estimate, no sampling.
    Cmds,
    /// Posterior sampling under the given coupling scheme.
    Bayes(CouplingScheme),
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Cmds => f.write_str("cmds"),
            Method::Bayes(s) => write!(f, "{s}"),
        }
    }
}

/// One experiment cell. Cells sharing `(n_objects, true_dim, sigma_true,
/// noise, seed)` see the same simulated data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub n_objects: usize,
    pub true_dim: usize,
    pub fit_dim: usize,
    pub sigma_true: f64,
    pub noise: NoiseKind,
    pub method: Method,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub cell: Cell,
    pub mse_bar: f64,
    /// `None` for point estimates or chains too short for ESS.
    pub min_ess: Option<f64>,
    pub min_ess_series: Option<String>,
    pub seconds: f64,
    pub ess_per_hour: Option<f64>,
    pub acceptance: Option<f64>,
}

/// Shared settings for [`run_cells`].
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub sampler: SamplerConfig,
    pub priors: Option<PriorSpec>,
    pub max_pairs: usize,
    pub monitored: MonitoredSeries,
    /// Run cells concurrently; each chain then evaluates serially.
    pub parallel_cells: bool,
}

impl RunSettings {
    pub fn new(sampler: SamplerConfig) -> Self {
        Self {
            sampler,
            priors: None,
            max_pairs: 1000,
            monitored: MonitoredSeries::All,
            parallel_cells: cfg!(feature = "parallel"),
        }
    }
}

fn run_cell(cell: &Cell, settings: &RunSettings, exec: Execution) -> Result<CellResult> {
    let data = simulate_dataset(&SimSpec {
        n_objects: cell.n_objects,
        true_dim: cell.true_dim,
        sigma_true: cell.sigma_true,
        noise_kind: cell.noise,
        seed: cell.seed,
    })?;
    let started = std::time::Instant::now();
    match cell.method {
        Method::Cmds => {
            let x = classical_mds(&data.observed, cell.fit_dim)?;
            let seconds = started.elapsed().as_secs_f64();
            Ok(CellResult {
                cell: cell.clone(),
                mse_bar: config_mse(&x, &data.true_distances)?,
                min_ess: None,
                min_ess_series: None,
                seconds,
                ess_per_hour: None,
                acceptance: None,
            })
        }
        Method::Bayes(scheme) => {
            let priors = settings.priors.clone().unwrap_or_else(|| PriorSpec::standard(cell.fit_dim));
            let mut sampler = settings.sampler.clone();
            sampler.seed = cell.seed;
            let trace = run_chain_with(exec, &data.observed, scheme, &priors, &sampler, cell.fit_dim, Init::ClassicalMds)?;
            let mut mse_rng = rng::substream(cell.seed, 2);
            let mse_bar = mean_mse(&trace, &data.true_distances, settings.max_pairs, &mut mse_rng)?;
            let seconds = trace.wall_seconds().unwrap_or_else(|| started.elapsed().as_secs_f64());
            let (min_ess, series) = match min_ess(&trace, &settings.monitored) {
                Ok((e, s)) => (Some(e), Some(s)),
                Err(_) => (None, None),
            };
            let ess_per_hour = min_ess.and_then(|e| per_hour(e, seconds).ok());
            let acceptance = trace.meta.as_ref().map(|m| m.acceptance.location_rate_post_burn_in);
            Ok(CellResult {
                cell: cell.clone(),
                mse_bar,
                min_ess,
                min_ess_series: series,
                seconds,
                ess_per_hour,
                acceptance,
            })
        }
    }
}

/// Runs every cell and returns results in input order.
pub fn run_cells(cells: &[Cell], settings: &RunSettings) -> Result<Vec<CellResult>> {
    #[cfg(feature = "parallel")]
    if settings.parallel_cells {
        use rayon::prelude::*;
        return cells.par_iter().map(|c| run_cell(c, settings, Execution::Serial)).collect();
    }
    cells.iter().map(|c| run_cell(c, settings, Execution::default())).collect()
}

/// Long-format CSV, one row per cell.
pub fn write_results_csv<W: Write>(results: &[CellResult], mut out: W) -> Result<()> {
    writeln!(
        out,
        "n_objects,true_dim,fit_dim,sigma_true,noise,method,seed,mse_bar,min_ess,min_ess_series,seconds,ess_per_hour,acceptance"
    )?;
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    for r in results {
        let c = &r.cell;
        let noise = match c.noise {
            NoiseKind::TruncatedNormal => "tnorm",
            NoiseKind::LogNormal => "lognormal",
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            c.n_objects,
            c.true_dim,
            c.fit_dim,
            c.sigma_true,
            noise,
            c.method,
            c.seed,
            r.mse_bar,
            opt(r.min_ess),
            r.min_ess_series.clone().unwrap_or_default(),
            r.seconds,
            opt(r.ess_per_hour),
            opt(r.acceptance),
        )?;
    }
    Ok(())
}

/// MSE-bar against band count: `Full` plus each `Banded(b)`, per seed.
pub fn elbow_cells(n: usize, sigma_true: f64, bands: &[usize], seeds: &[u64], noise: NoiseKind) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &seed in seeds {
        let base = Cell {
            n_objects: n,
            true_dim: 2,
            fit_dim: 2,
            sigma_true,
            noise,
            method: Method::Bayes(CouplingScheme::Full),
            seed,
        };
        cells.push(base.clone());
        for &b in bands.iter().filter(|&&b| b >= 1 && b < n) {
            cells.push(Cell { method: Method::Bayes(CouplingScheme::Banded(b)), ..base.clone() });
        }
    }
    cells
}

/// Data generated in `true_dim` dimensions, embedded in two by classical
/// MDS, the full model and each banded model.
pub fn dimension_cells(n: usize, sigma_true: f64, true_dims: &[usize], bands: &[usize], seeds: &[u64]) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &seed in seeds {
        for &d in true_dims {
            let base = Cell {
                n_objects: n,
                true_dim: d,
                fit_dim: 2,
                sigma_true,
                noise: NoiseKind::TruncatedNormal,
                method: Method::Cmds,
                seed,
            };
            cells.push(base.clone());
            cells.push(Cell { method: Method::Bayes(CouplingScheme::Full), ..base.clone() });
            for &b in bands.iter().filter(|&&b| b >= 1 && b < n) {
                cells.push(Cell { method: Method::Bayes(CouplingScheme::Banded(b)), ..base.clone() });
            }
        }
    }
    cells
}

/// Timing and ESS cells over a range of sizes for each scheme.
pub fn efficiency_cells(ns: &[usize], schemes: &[CouplingScheme], sigma_true: f64, seed: u64) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &n in ns {
        for &s in schemes {
            if s.validate(n).is_ok() {
                cells.push(Cell {
                    n_objects: n,
                    true_dim: 2,
                    fit_dim: 2,
                    sigma_true,
                    noise: NoiseKind::TruncatedNormal,
                    method: Method::Bayes(s),
                    seed,
                });
            }
        }
    }
    cells
}

/// Coupling as a function of the number of objects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingRule {
    Full,
    /// `L = ceil(factor * sqrt(N))` landmarks, clamped to `[1, N]`.
    LandmarksSqrt(f64),
    /// `B = ceil(factor * sqrt(N))` bands, clamped to `[1, N - 1]`.
    BandsSqrt(f64),
}

impl CouplingRule {
    pub fn scheme(&self, n: usize) -> CouplingScheme {
        let count = |f: f64, max: usize| ((f * (n as f64).sqrt()).ceil() as usize).clamp(1, max);
        match *self {
            CouplingRule::Full => CouplingScheme::Full,
            CouplingRule::LandmarksSqrt(f) => CouplingScheme::Landmark(count(f, n)),
            CouplingRule::BandsSqrt(f) => CouplingScheme::Banded(count(f, n - 1)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConsistencyConfig {
    pub n_list: Vec<usize>,
    pub seeds: Vec<u64>,
    pub sigma_true: f64,
    pub rule: CouplingRule,
    pub sampler: SamplerConfig,
    pub parallel_cells: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub n_objects: usize,
    pub seed: u64,
    pub scheme: CouplingScheme,
    pub max_error: f64,
}

/// Largest per-object error between the posterior median of the aligned
/// one-dimensional locations and the truth. Each snapshot is aligned by the
/// best sign flip and translation before the median is taken.
pub fn max_aligned_error(trace: &crate::samplers::Trace, truth: &LatentConfig) -> Result<f64> {
    if trace.dim != 1 || truth.dim() != 1 {
        return Err(Error::config("consistency errors are defined for one-dimensional locations"));
    }
    let median = align_trace(trace, truth, Summary::Median)?;
    Ok(median
        .as_slice()
        .iter()
        .zip(truth.as_slice())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

fn consistency_cell(n: usize, seed: u64, cfg: &ConsistencyConfig, exec: Execution) -> Result<ConsistencyRow> {
    let data = simulate_dataset(&SimSpec {
        n_objects: n,
        true_dim: 1,
        sigma_true: cfg.sigma_true,
        noise_kind: NoiseKind::TruncatedNormal,
        seed,
    })?;
    let scheme = cfg.rule.scheme(n);
    let mut sampler = cfg.sampler.clone();
    sampler.seed = seed;
    let trace = run_chain_with(exec, &data.observed, scheme, &PriorSpec::standard(1), &sampler, 1, Init::ClassicalMds)?;
    Ok(ConsistencyRow { n_objects: n, seed, scheme, max_error: max_aligned_error(&trace, &data.locations)? })
}

/// Error table over every `(N, seed)` pair, ordered by `N` then seed.
pub fn consistency_experiment(cfg: &ConsistencyConfig) -> Result<Vec<ConsistencyRow>> {
    let jobs: Vec<(usize, u64)> = cfg.n_list.iter().flat_map(|&n| cfg.seeds.iter().map(move |&s| (n, s))).collect();
    #[cfg(feature = "parallel")]
    if cfg.parallel_cells {
        use rayon::prelude::*;
        return jobs.par_iter().map(|&(n, s)| consistency_cell(n, s, cfg, Execution::Serial)).collect();
    }
    jobs.iter().map(|&(n, s)| consistency_cell(n, s, cfg, Execution::default())).collect()
}
