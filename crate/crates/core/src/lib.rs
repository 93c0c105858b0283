//! Sparse Bayesian multidimensional scaling.
//!
//! Observed dissimilarities are modelled as truncated-normal perturbations of
//! latent Euclidean distances. The log-likelihood and its gradient can be
//! restricted to a subset of object pairs ("couplings"): a set of off-diagonal
//! bands of the dissimilarity matrix, or the full columns of a set of landmark
//! objects. This brings the per-evaluation cost from `O(N^2)` down to `O(NB)`
//! or `O(NL)`.
//!
//! The crate is organised as:
//!
//! * [`dissim`]: latent configurations, dissimilarity matrices, coupling
//!   schemes and truncated-normal numerics.
//! * [`likelihood`]: full and sparse log-likelihood / gradient kernels.
//! * [`samplers`]: priors, adaptive Metropolis-Hastings, HMC and the chain driver.
//! * [`evaluation`]: simulation, classical MDS, Procrustes alignment and
//!   diagnostics (MSE-bar, ESS, Hellinger distance).
//!
//! With the default `parallel` feature the kernels split work across rows with
//! rayon; results are bitwise identical to the sequential path.

pub mod dissim;
pub mod error;
pub mod evaluation;
pub mod likelihood;
pub mod rng;
pub mod samplers;

pub use dissim::{CouplingScheme, DissimMatrix, LatentConfig, TruncatedNormalParams};
pub use error::{Error, Result};
pub use likelihood::{grad_log_likelihood, log_likelihood, Execution, GradientMatrix};
