use std::time::Instant;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::adapt::{adapt_scale, AcceptanceWindow};
use super::hmc::hmc_step;
use super::mh::mh_location_step;
use super::prior::PriorSpec;
use super::sigma2::sigma2_mh_step;
use super::trace::{AcceptCounts, AcceptanceSummary, Trace, TraceMeta, TraceSample};
use crate::dissim::{CouplingScheme, DissimMatrix, LatentConfig};
use crate::error::{Error, Result};
use crate::evaluation::classical_mds;
use crate::likelihood::{coupling_count, CouplingIter, Execution};
use crate::rng::{self, SbmdsRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mh,
    Hmc,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mh" => Ok(Algorithm::Mh),
            "hmc" => Ok(Algorithm::Hmc),
            _ => Err(Error::config(format!("unknown sampler `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub algorithm: Algorithm,
    pub iterations: u64,
    pub burn_in: u64,
    pub thin: u64,
    /// Leapfrog steps per HMC proposal.
    pub leapfrog_steps: usize,
    /// Initial MH proposal sd or HMC step size.
    pub initial_step: f64,
    /// Target acceptance rate of the location block.
    pub target_accept: f64,
    /// Initial sd of the sigma2 proposal; derived from the initial sigma2 when unset.
    pub sigma2_initial_step: Option<f64>,
    pub sigma2_target_accept: f64,
    /// Initial sigma2; derived from initial residuals when unset.
    pub initial_sigma2: Option<f64>,
    /// Iterations in the sliding acceptance window used for adaptation.
    pub adapt_window: usize,
    pub adapt: bool,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(algorithm: Algorithm, iterations: u64, burn_in: u64, thin: u64, seed: u64) -> Self {
        let (initial_step, target_accept) = match algorithm {
            Algorithm::Mh => (0.1, 0.44),
            Algorithm::Hmc => (0.01, 0.65),
        };
        Self {
            algorithm,
            iterations,
            burn_in,
            thin,
            leapfrog_steps: 20,
            initial_step,
            target_accept,
            sigma2_initial_step: None,
            sigma2_target_accept: 0.44,
            initial_sigma2: None,
            adapt_window: 100,
            adapt: true,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::config(m));
        if self.iterations == 0 {
            return fail("iterations must be positive");
        }
        if self.burn_in >= self.iterations {
            return fail("burn-in must be smaller than the number of iterations");
        }
        if self.thin == 0 {
            return fail("thin must be at least 1");
        }
        if self.leapfrog_steps == 0 {
            return fail("leapfrog steps must be at least 1");
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return fail("initial step must be positive");
        }
        for t in [self.target_accept, self.sigma2_target_accept] {
            if !(t > 0.0 && t < 1.0) {
                return fail("target acceptance rates must lie in (0, 1)");
            }
        }
        if matches!(self.sigma2_initial_step, Some(v) if !(v > 0.0 && v.is_finite())) {
            return fail("sigma2 initial step must be positive");
        }
        if matches!(self.initial_sigma2, Some(v) if !(v > 0.0 && v.is_finite())) {
            return fail("initial sigma2 must be positive");
        }
        Ok(())
    }

    /// `floor((iterations - burn_in) / thin)`
    pub fn retained(&self) -> u64 {
        (self.iterations - self.burn_in) / self.thin
    }
}

/// Mutable state of one chain.
#[derive(Debug, Clone)]
pub struct ChainState {
    pub x: LatentConfig,
    pub sigma2: f64,
    /// MH proposal sd or HMC step size for the locations.
    pub location_scale: f64,
    pub sigma2_scale: f64,
    pub iteration: u64,
    pub counts: AcceptCounts,
    pub location_window: AcceptanceWindow,
    pub sigma2_window: AcceptanceWindow,
    pub rng: SbmdsRng,
    pub exec: Execution,
}

impl ChainState {
    pub fn new(x: LatentConfig, sigma2: f64, location_scale: f64, sigma2_scale: f64, seed: u64) -> Result<Self> {
        for (name, v) in [("sigma2", sigma2), ("location scale", location_scale), ("sigma2 scale", sigma2_scale)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            x,
            sigma2,
            location_scale,
            sigma2_scale,
            iteration: 0,
            counts: AcceptCounts::default(),
            location_window: AcceptanceWindow::new(100),
            sigma2_window: AcceptanceWindow::new(100),
            rng: rng::from_seed(seed),
            exec: Execution::default(),
        })
    }

    pub(crate) fn record_location(&mut self, accepted: u32, proposed: u32) {
        self.counts.location_accepted += u64::from(accepted);
        self.counts.location_proposed += u64::from(proposed);
        self.location_window.push(accepted, proposed);
    }

    pub(crate) fn record_sigma2(&mut self, accepted: u32) {
        self.counts.sigma2_accepted += u64::from(accepted);
        self.counts.sigma2_proposed += 1;
        self.sigma2_window.push(accepted, 1);
    }
}

/// Starting point for the latent locations.
#[derive(Debug, Clone)]
pub enum Init {
    Given(LatentConfig),
    /// Classical MDS of the observed dissimilarities, falling back to
    /// `Random` if the eigendecomposition fails.
    ClassicalMds,
    /// I.i.d. standard normal coordinates.
    Random,
}

fn random_config(n: usize, dim: usize, rng: &mut SbmdsRng) -> Result<LatentConfig> {
    LatentConfig::new(n, dim, (0..n * dim).map(|_| StandardNormal.sample(rng)).collect())
}

/// Mean squared residual over coupled pairs, floored to stay positive.
fn residual_sigma2(delta: &DissimMatrix, x: &LatentConfig, scheme: CouplingScheme) -> Result<f64> {
    let mut total = 0.0;
    for (i, j) in CouplingIter::new(scheme, x.n_objects())? {
        let r = delta.get(i, j) - x.distance(i, j);
        total += r * r;
    }
    Ok((total / coupling_count(scheme, x.n_objects()) as f64).max(1e-4))
}

/// Runs a Metropolis-within-Gibbs chain: each iteration updates all
/// locations (one MH sweep or one HMC trajectory) and then `sigma2`.
/// Proposal scales adapt during burn-in only.
pub fn run_chain(
    delta: &DissimMatrix,
    scheme: CouplingScheme,
    priors: &PriorSpec,
    config: &SamplerConfig,
    dim: usize,
    init: Init,
) -> Result<Trace> {
    run_chain_with(Execution::default(), delta, scheme, priors, config, dim, init)
}

pub fn run_chain_with(
    exec: Execution,
    delta: &DissimMatrix,
    scheme: CouplingScheme,
    priors: &PriorSpec,
    config: &SamplerConfig,
    dim: usize,
    init: Init,
) -> Result<Trace> {
    config.validate()?;
    let n = delta.n_objects();
    scheme.validate(n)?;
    priors.validate(dim)?;
    // Stream 0 drives the chain; stream 1 is reserved for initialisation.
    let mut init_rng = rng::substream(config.seed, 1);
    let x0 = match init {
        Init::Given(x) => {
            if x.n_objects() != n || x.dim() != dim {
                return Err(Error::config(format!(
                    "initial configuration is {}x{}, expected {n}x{dim}",
                    x.n_objects(),
                    x.dim()
                )));
            }
            x
        }
        Init::ClassicalMds => match classical_mds(delta, dim) {
            Ok(x) => x,
            Err(_) => random_config(n, dim, &mut init_rng)?,
        },
        Init::Random => random_config(n, dim, &mut init_rng)?,
    };
    let sigma2 = match config.initial_sigma2 {
        Some(v) => v,
        None => residual_sigma2(delta, &x0, scheme)?,
    };
    let sigma2_step = config.sigma2_initial_step.unwrap_or(0.1 * sigma2);
    let mut state = ChainState::new(x0, sigma2, config.initial_step, sigma2_step, config.seed)?;
    state.rng = rng::substream(config.seed, 0);
    state.exec = exec;
    state.location_window = AcceptanceWindow::new(config.adapt_window);
    state.sigma2_window = AcceptanceWindow::new(config.adapt_window);

    let started = Instant::now();
    let mut samples = Vec::with_capacity(config.retained() as usize);
    let mut burn_in_counts = AcceptCounts::default();
    let mut burn_in_location_scale = state.location_scale;
    let mut singular_samples = 0u64;
    for s in 1..=config.iterations {
        state.iteration = s;
        match config.algorithm {
            Algorithm::Mh => {
                mh_location_step(&mut state, delta, scheme, priors)?;
            }
            Algorithm::Hmc => {
                hmc_step(&mut state, delta, scheme, priors, config.leapfrog_steps);
            }
        }
        sigma2_mh_step(&mut state, delta, scheme, priors)?;
        if !(state.location_scale.is_finite() && state.sigma2.is_finite()) {
            return Err(Error::Numerical(format!("chain state became non-finite at iteration {s}")));
        }

        if s <= config.burn_in {
            if config.adapt {
                let loc_above = state.location_window.rate() > config.target_accept;
                state.location_scale = adapt_scale(state.location_scale, s, loc_above);
                let s2_above = state.sigma2_window.rate() > config.sigma2_target_accept;
                state.sigma2_scale = adapt_scale(state.sigma2_scale, s, s2_above);
            }
            if s == config.burn_in {
                burn_in_counts = state.counts.clone();
                burn_in_location_scale = state.location_scale;
            }
        } else if (s - config.burn_in).is_multiple_of(config.thin) {
            samples.push(TraceSample {
                iteration: s,
                sigma2: state.sigma2,
                x: state.x.as_slice().to_vec(),
            });
            if has_coincident_pair(&state.x, scheme) {
                singular_samples += 1;
            }
        }
    }
    let wall_seconds = started.elapsed().as_secs_f64();
    let meta = TraceMeta {
        n_objects: n,
        dim,
        scheme,
        config: config.clone(),
        priors: priors.clone(),
        acceptance: AcceptanceSummary::new(&state.counts, &burn_in_counts),
        counts: state.counts.clone(),
        divergences: state.counts.divergences,
        burn_in_location_scale,
        final_location_scale: state.location_scale,
        final_sigma2_scale: state.sigma2_scale,
        singular_samples,
        wall_seconds,
    };
    Ok(Trace { n_objects: n, dim, samples, meta: Some(meta) })
}

fn has_coincident_pair(x: &LatentConfig, scheme: CouplingScheme) -> bool {
    CouplingIter::new(scheme, x.n_objects())
        .map(|mut it| it.any(|(i, j)| x.distance(i, j) == 0.0))
        .unwrap_or(false)
}
