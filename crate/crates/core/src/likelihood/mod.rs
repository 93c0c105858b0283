//! Full and sparse log-likelihood and gradient kernels.
//!
//! For a coupling scheme with index sets `J_n`, the sparse log-likelihood is
//!
//! ```text
//! l_sp = - sum_n sum_{n' in J_n, n' > n} [ log(2 pi s2)/2 + (d - d*)^2 / (2 s2) + log Phi(d*/s) ]
//! ```
//!
//! and the gradient with respect to row `x_n` is `-sum_{n' in J_n} r_{nn'}` with
//!
//! ```text
//! r_{nn'} = [ (d* - d)/s2 + phi(d*/s) / (s Phi(d*/s)) ] (x_n - x_n') / d*
//! ```
//!
//! where `d` is the observed and `d*` the latent distance. `Full`,
//! `Banded(N-1)` and `Landmark(N)` (or `Landmark(N-1)`) visit the same pairs
//! in the same order and so return bitwise identical results.

mod coupling;
mod kernel;
mod sum;
mod timing;

pub use coupling::{coupling_count, coupling_set, CouplingIter, Partners};
pub use kernel::{
    grad_log_likelihood, grad_log_likelihood_with, log_likelihood, log_likelihood_with,
    object_log_likelihood, Execution, GradientMatrix,
};
pub(crate) use kernel::ObjectKernel;
pub use sum::{pairwise_sum, PairwiseSum};
pub use timing::{eval_timer, eval_timer_with, TimingRecord};
pub(crate) use timing::median_of;
