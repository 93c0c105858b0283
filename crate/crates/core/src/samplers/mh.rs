use rand::Rng;
use rand_distr::{Distribution, StandardNormal, StandardUniform};

use super::chain::ChainState;
use super::prior::PriorSpec;
use crate::dissim::{CouplingScheme, DissimMatrix, LatentConfig};
use crate::error::{Error, Result};
use crate::likelihood::object_log_likelihood;

fn row_log_prior(row: &[f64], priors: &PriorSpec) -> f64 {
    row.iter()
        .zip(&priors.location_prior_cov_diag)
        .map(|(x, v)| -0.5 * x * x / v)
        .sum()
}

/// Log Metropolis ratio for moving object `n` to `candidate` under a
/// symmetric proposal. Only likelihood terms coupling `n` are evaluated.
pub fn location_log_ratio(
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
    priors: &PriorSpec,
    n: usize,
    candidate: &[f64],
) -> Result<f64> {
    priors.validate(x.dim())?;
    let proposed = object_log_likelihood(delta, x, sigma2, scheme, n, candidate)?;
    let current = object_log_likelihood(delta, x, sigma2, scheme, n, x.row(n))?;
    Ok(proposed - current + row_log_prior(candidate, priors) - row_log_prior(x.row(n), priors))
}

/// One Metropolis sweep over all objects. Each location is proposed jointly
/// from `N(x_n, tau^2 I)` with `tau = state.location_scale`. Returns the number
/// of accepted moves.
pub fn mh_location_step(
    state: &mut ChainState,
    delta: &DissimMatrix,
    scheme: CouplingScheme,
    priors: &PriorSpec,
) -> Result<u32> {
    let (n_objects, dim) = (state.x.n_objects(), state.x.dim());
    priors.validate(dim)?;
    let kernel = crate::likelihood::ObjectKernel::new(delta, &state.x, state.sigma2, scheme)?;
    let tau = state.location_scale;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Numerical(format!("invalid proposal scale {tau}")));
    }
    let mut candidate = vec![0.0; dim];
    let mut accepted = 0;
    for n in 0..n_objects {
        for (c, x) in candidate.iter_mut().zip(state.x.row(n)) {
            let z: f64 = StandardNormal.sample(&mut state.rng);
            *c = x + tau * z;
        }
        let log_ratio = kernel.terms(&state.x, n, &candidate) - kernel.terms(&state.x, n, state.x.row(n))
            + row_log_prior(&candidate, priors)
            - row_log_prior(state.x.row(n), priors);
        let u: f64 = state.rng.sample(StandardUniform);
        if u.ln() < log_ratio {
            state.x.row_mut(n).copy_from_slice(&candidate);
            accepted += 1;
        }
    }
    state.record_location(accepted, n_objects as u32);
    Ok(accepted)
}
