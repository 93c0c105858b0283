//! Posterior inference: priors, adaptive Metropolis-Hastings, Hamiltonian
//! Monte Carlo and the Metropolis-within-Gibbs chain driver.

mod adapt;
mod chain;
mod hmc;
mod mh;
mod prior;
mod sigma2;
mod trace;

pub use adapt::{adapt_scale, AcceptanceWindow};
pub use chain::{run_chain, run_chain_with, Algorithm, ChainState, Init, SamplerConfig};
pub use hmc::{
    hmc_step, hmc_transition, kinetic_energy, leapfrog, log_acceptance_ratio, HmcOutcome,
    LeapfrogError, ModelPotential, Potential,
};
pub use mh::{location_log_ratio, mh_location_step};
pub use prior::{log_posterior, log_prior_locations, log_prior_sigma2, PriorSpec};
pub use sigma2::{sigma2_hastings_log_correction, sigma2_mh_step};
pub use trace::{AcceptCounts, AcceptanceSummary, Trace, TraceMeta, TraceSample};
