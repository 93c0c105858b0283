//! Standard normal density, distribution and quantile functions.
//!
//! `log_std_normal_cdf` is accurate in relative terms over the whole real line:
//! the body and upper half use `erfc`, the far lower tail (`z < -5`) uses a
//! continued fraction for the Mills ratio so that `log Phi(z)` never underflows.

use libm::erfc;
use statrs::function::erf::erfc_inv;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
/// `ln(sqrt(2 pi))`
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

const LOWER_TAIL_SWITCH: f64 = -5.0;
const MILLS_CF_TERMS: usize = 60;

#[inline]
pub fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z - LN_SQRT_2PI).exp()
}

#[inline]
pub fn log_std_normal_pdf(z: f64) -> f64 {
    -0.5 * z * z - LN_SQRT_2PI
}

#[inline]
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// `log Phi(z)`.
#[inline]
pub fn log_std_normal_cdf(z: f64) -> f64 {
    if z >= 0.0 {
        (-0.5 * erfc(z * FRAC_1_SQRT_2)).ln_1p()
    } else if z >= LOWER_TAIL_SWITCH {
        (0.5 * erfc(-z * FRAC_1_SQRT_2)).ln()
    } else {
        log_std_normal_pdf(z) + mills_ratio(-z).ln()
    }
}

/// Above this `Phi(z)` rounds to one.
const CDF_SATURATES: f64 = 8.5;

/// Mills ratio `(1 - Phi(x)) / phi(x)` for `x >= 5`, by backward evaluation of
/// its continued fraction.
fn mills_ratio(x: f64) -> f64 {
    debug_assert!(x >= -LOWER_TAIL_SWITCH);
    let mut t = x;
    for k in (1..=MILLS_CF_TERMS).rev() {
        t = x + k as f64 / t;
    }
    1.0 / t
}

/// `phi(z) / Phi(z)`, the hazard term appearing in the likelihood gradient.
#[inline]
pub fn pdf_over_cdf(z: f64) -> f64 {
    if z >= CDF_SATURATES {
        std_normal_pdf(z)
    } else if z >= LOWER_TAIL_SWITCH {
        std_normal_pdf(z) / std_normal_cdf(z)
    } else {
        1.0 / mills_ratio(-z)
    }
}

/// Standard normal quantile `Phi^{-1}(p)` for `p` in `(0, 1)`.
pub fn std_normal_quantile(p: f64) -> f64 {
    -std::f64::consts::SQRT_2 * erfc_inv(2.0 * p)
}
