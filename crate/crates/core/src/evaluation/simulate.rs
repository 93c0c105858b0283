use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::dissim::{sample_truncated_normal, DissimMatrix, LatentConfig, TruncatedNormalParams};
use crate::error::{Error, Result};
use crate::rng::{self, SbmdsRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    /// `delta ~ N_(0, inf)(delta_true, sigma_true^2)`
    TruncatedNormal,
    /// `delta = max(delta_true + exp(Z) - 1, 1e-6)` with `Z ~ N(0, sigma_true^2)`.
    /// `exp(Z) - 1` has median zero.
    LogNormal,
}

impl std::str::FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tnorm" | "truncated-normal" => Ok(NoiseKind::TruncatedNormal),
            "lognormal" | "log-normal" => Ok(NoiseKind::LogNormal),
            _ => Err(Error::config(format!("unknown noise kind `{s}`"))),
        }
    }
}

/// Floor applied to log-normal perturbed dissimilarities.
pub const LOG_NORMAL_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSpec {
    pub n_objects: usize,
    pub true_dim: usize,
    pub sigma_true: f64,
    pub noise_kind: NoiseKind,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct SimulatedData {
    pub locations: LatentConfig,
    pub true_distances: DissimMatrix,
    pub observed: DissimMatrix,
}

pub fn simulate_dataset(spec: &SimSpec) -> Result<SimulatedData> {
    simulate_dataset_with(spec, &mut rng::from_seed(spec.seed))
}

/// Standard normal true locations, their Euclidean distances, and one noisy
/// observation per unordered pair (drawn in ascending pair order).
pub fn simulate_dataset_with(spec: &SimSpec, rng: &mut SbmdsRng) -> Result<SimulatedData> {
    if !(spec.sigma_true >= 0.0 && spec.sigma_true.is_finite()) {
        return Err(Error::config("sigma_true must be non-negative"));
    }
    let (n, d) = (spec.n_objects, spec.true_dim);
    let coords: Vec<f64> = (0..n * d).map(|_| StandardNormal.sample(rng)).collect();
    let locations = LatentConfig::new(n, d, coords)?;
    let true_distances = locations.pairwise_distances();
    if spec.sigma_true == 0.0 {
        return Ok(SimulatedData { locations, observed: true_distances.clone(), true_distances });
    }
    let mut values = true_distances.as_slice().to_vec();
    let log_normal = Normal::new(0.0, spec.sigma_true).map_err(|e| Error::config(e.to_string()))?;
    for i in 0..n {
        for j in i + 1..n {
            let t = true_distances.get(i, j);
            let obs = match spec.noise_kind {
                NoiseKind::TruncatedNormal => {
                    sample_truncated_normal(&TruncatedNormalParams::positive(t, spec.sigma_true)?, rng)
                }
                NoiseKind::LogNormal => {
                    let z: f64 = log_normal.sample(rng);
                    (t + z.exp() - 1.0).max(LOG_NORMAL_FLOOR)
                }
            };
            values[i * n + j] = obs;
            values[j * n + i] = obs;
        }
    }
    let observed = DissimMatrix::new(n, values)?;
    Ok(SimulatedData { locations, true_distances, observed })
}
