use rand::Rng;
use rand_distr::{Distribution, Exp, StandardUniform};

use super::normal::{log_std_normal_cdf, log_std_normal_pdf, std_normal_cdf, std_normal_quantile};
use crate::error::{Error, Result};

/// Normal distribution with mean `mean` and standard deviation `sd`, truncated
/// to the open interval `(lower, upper)`. `lower` must be finite; `upper` may
/// be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedNormalParams {
    pub mean: f64,
    pub sd: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Regions holding less probability than this are sampled by rejection.
const INVERSE_CDF_MIN_MASS: f64 = 1e-6;

impl TruncatedNormalParams {
    pub fn new(mean: f64, sd: f64, lower: f64, upper: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Domain(format!("mean must be finite, got {mean}")));
        }
        if !(sd > 0.0 && sd.is_finite()) {
            return Err(Error::Domain(format!("sd must be positive and finite, got {sd}")));
        }
        if !lower.is_finite() {
            return Err(Error::Domain("lower bound must be finite".into()));
        }
        if upper.is_nan() || upper <= lower {
            return Err(Error::Domain(format!(
                "upper bound {upper} must exceed lower bound {lower}"
            )));
        }
        Ok(Self { mean, sd, lower, upper })
    }

    /// `N_(0, inf)(mean, sd^2)`, the observation model for dissimilarities.
    pub fn positive(mean: f64, sd: f64) -> Result<Self> {
        Self::new(mean, sd, 0.0, f64::INFINITY)
    }

    fn standardized_bounds(&self) -> (f64, f64) {
        (
            (self.lower - self.mean) / self.sd,
            (self.upper - self.mean) / self.sd,
        )
    }

    /// Log of the standard normal mass of the standardized support.
    pub fn log_mass(&self) -> f64 {
        let (a, b) = self.standardized_bounds();
        log_interval_mass(a, b)
    }
}

/// `log(Phi(b) - Phi(a))` for `a < b`, evaluated on whichever side of zero
/// keeps the subtraction well conditioned.
pub(crate) fn log_interval_mass(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        let hi = log_std_normal_cdf(-a);
        let lo = log_std_normal_cdf(-b);
        hi + (-(lo - hi).exp()).ln_1p()
    } else {
        let hi = log_std_normal_cdf(b);
        let lo = log_std_normal_cdf(a);
        hi + (-(lo - hi).exp()).ln_1p()
    }
}

/// Log-density of the truncated normal; `-inf` outside `(lower, upper)`.
pub fn truncated_normal_logpdf(x: f64, params: &TruncatedNormalParams) -> f64 {
    if !(x > params.lower && x < params.upper) {
        return f64::NEG_INFINITY;
    }
    let z = (x - params.mean) / params.sd;
    log_std_normal_pdf(z) - params.sd.ln() - params.log_mass()
}

/// One draw from the truncated normal.
///
/// Uses inversion of the CDF when the support carries at least `1e-6` of the
/// untruncated mass and a rejection sampler otherwise.
pub fn sample_truncated_normal<R: Rng + ?Sized>(params: &TruncatedNormalParams, rng: &mut R) -> f64 {
    let (a, b) = params.standardized_bounds();
    loop {
        let z = sample_standard(a, b, rng);
        let x = params.mean + params.sd * z;
        if x > params.lower && x < params.upper {
            return x;
        }
    }
}

fn sample_standard<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    // Reflect lower-tail regions into the upper tail.
    if b <= 0.0 {
        return -sample_standard(-b, -a, rng);
    }
    if a >= 0.0 {
        let mass = log_interval_mass(a, b).exp();
        if mass >= INVERSE_CDF_MIN_MASS {
            // Invert in the lower tail where Phi keeps full relative precision.
            let p_lo = std_normal_cdf(-b);
            let p_hi = std_normal_cdf(-a);
            let u: f64 = rng.sample(StandardUniform);
            return -std_normal_quantile(p_lo + u * (p_hi - p_lo));
        }
        return tail_rejection(a, b, rng);
    }
    // a < 0 < b
    let mass = log_interval_mass(a, b).exp();
    if mass >= INVERSE_CDF_MIN_MASS {
        let p_lo = std_normal_cdf(a);
        let p_hi = std_normal_cdf(b);
        let u: f64 = rng.sample(StandardUniform);
        std_normal_quantile(p_lo + u * (p_hi - p_lo))
    } else {
        // Tiny interval around the mode: uniform proposals, density ratio acceptance.
        loop {
            let u: f64 = rng.sample(StandardUniform);
            let z = a + u * (b - a);
            let v: f64 = rng.sample(StandardUniform);
            if v.ln() <= -0.5 * z * z {
                return z;
            }
        }
    }
}

/// Draws from the standard normal restricted to `(a, b)` with `a >= 0` and
/// negligible mass.
fn tail_rejection<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    let a_eff = a.max(1e-12);
    if (b - a) * a_eff < 1.0 {
        // Narrow window: uniform proposal against the envelope phi(a).
        loop {
            let u: f64 = rng.sample(StandardUniform);
            let z = a + u * (b - a);
            let v: f64 = rng.sample(StandardUniform);
            if v.ln() <= -0.5 * (z * z - a * a) {
                return z;
            }
        }
    }
    // Exponential proposal with the optimal rate for the tail beyond `a`.
    let rate = 0.5 * (a + (a * a + 4.0).sqrt());
    let exp = Exp::new(rate).expect("positive rate");
    loop {
        let z = a + exp.sample(rng);
        if z >= b {
            continue;
        }
        let v: f64 = rng.sample(StandardUniform);
        if v.ln() <= -0.5 * (z - rate) * (z - rate) {
            return z;
        }
    }
}
