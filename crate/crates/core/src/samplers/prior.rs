use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::dissim::{CouplingScheme, DissimMatrix, LatentConfig};
use crate::error::{Error, Result};
use crate::likelihood::log_likelihood;

/// Independent `N(0, diag(location_prior_cov_diag))` priors on each latent
/// location and an inverse-gamma prior on the error variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub location_prior_cov_diag: Vec<f64>,
    pub sigma2_prior_shape: f64,
    pub sigma2_prior_rate: f64,
}

impl PriorSpec {
    /// `x_n ~ N(0, I_D)` and `sigma2 ~ IG(1, 1)`.
    pub fn standard(dim: usize) -> Self {
        Self {
            location_prior_cov_diag: vec![1.0; dim],
            sigma2_prior_shape: 1.0,
            sigma2_prior_rate: 1.0,
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.location_prior_cov_diag.len() != dim {
            return Err(Error::dim(format!(
                "prior covariance has {} entries for latent dimension {dim}",
                self.location_prior_cov_diag.len()
            )));
        }
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !self.location_prior_cov_diag.iter().all(|&v| positive(v))
            || !positive(self.sigma2_prior_shape)
            || !positive(self.sigma2_prior_rate)
        {
            return Err(Error::config("prior parameters must be positive and finite"));
        }
        Ok(())
    }

    /// `d/dx log N(x; 0, Lambda)` added into `grad`, row-major over `coords`.
    pub(crate) fn add_location_gradient(&self, coords: &[f64], grad: &mut [f64]) {
        let d = self.location_prior_cov_diag.len();
        for (i, (g, x)) in grad.iter_mut().zip(coords).enumerate() {
            *g -= x / self.location_prior_cov_diag[i % d];
        }
    }
}

/// `sum_n log N(x_n; 0, Lambda)` including normalising constants.
pub fn log_prior_locations(x: &LatentConfig, priors: &PriorSpec) -> Result<f64> {
    priors.validate(x.dim())?;
    Ok(log_prior_locations_unchecked(x.as_slice(), priors))
}

pub(crate) fn log_prior_locations_unchecked(coords: &[f64], priors: &PriorSpec) -> f64 {
    let d = priors.location_prior_cov_diag.len();
    let log_norm: f64 = priors
        .location_prior_cov_diag
        .iter()
        .map(|v| -0.5 * (2.0 * std::f64::consts::PI * v).ln())
        .sum();
    let n_rows = coords.len() / d;
    let quad: f64 = coords
        .iter()
        .enumerate()
        .map(|(i, x)| x * x / priors.location_prior_cov_diag[i % d])
        .sum();
    n_rows as f64 * log_norm - 0.5 * quad
}

/// Inverse-gamma log-density `a ln b - ln Gamma(a) - (a + 1) ln s2 - b / s2`.
pub fn log_prior_sigma2(sigma2: f64, priors: &PriorSpec) -> f64 {
    if !(sigma2 > 0.0) {
        return f64::NEG_INFINITY;
    }
    let (a, b) = (priors.sigma2_prior_shape, priors.sigma2_prior_rate);
    a * b.ln() - ln_gamma(a) - (a + 1.0) * sigma2.ln() - b / sigma2
}

/// Sparse log-likelihood plus log-priors.
pub fn log_posterior(
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
    priors: &PriorSpec,
) -> Result<f64> {
    let ll = log_likelihood(delta, x, sigma2, scheme)?;
    Ok(ll + log_prior_locations(x, priors)? + log_prior_sigma2(sigma2, priors))
}
