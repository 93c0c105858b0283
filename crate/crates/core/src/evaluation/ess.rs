use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::samplers::Trace;

/// Cap on ESS as a multiple of the series length.
pub const ESS_CAP: f64 = 10.0;

/// Normalised autocorrelation at every lag, via zero-padded FFT.
fn autocorrelation(x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    let mean = x.iter().sum::<f64>() / n as f64;
    let ss: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    let scale = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if !(ss > n as f64 * (1e-13 * scale).powi(2)) {
        return Err(Error::validation("series is constant; ESS is undefined"));
    }
    let len = (2 * n).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v - mean, 0.0)).collect();
    buf.resize(len, Complex::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(len).process(&mut buf);
    for c in buf.iter_mut() {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(len).process(&mut buf);
    let c0 = buf[0].re;
    Ok(buf[..n].iter().map(|c| c.re / c0).collect())
}

/// Effective sample size `S / (1 + 2 sum rho_t)`, with the sum truncated by
/// Geyer's initial positive sequence and the result capped at `10 S`.
pub fn ess(series: &[f64]) -> Result<f64> {
    let s = series.len();
    if s < 10 {
        return Err(Error::validation(format!("ESS needs at least 10 values, got {s}")));
    }
    if series.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation("series contains non-finite values"));
    }
    let rho = autocorrelation(series)?;
    // tau = -1 + 2 * sum_k (rho_2k + rho_2k+1) over the leading positive pairs.
    let mut tau = -1.0;
    let mut k = 0;
    while 2 * k + 1 < s {
        let gamma = rho[2 * k] + rho[2 * k + 1];
        if gamma <= 0.0 {
            break;
        }
        tau += 2.0 * gamma;
        k += 1;
    }
    let cap = ESS_CAP * s as f64;
    Ok(if tau > 0.0 { (s as f64 / tau).min(cap) } else { cap })
}

/// Which scalar trace columns enter the minimum-ESS computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonitoredSeries {
    /// `sigma2` and every latent coordinate.
    All,
    /// Named columns (`sigma2`, `x_<n>_<d>`).
    Columns(Vec<String>),
}

impl MonitoredSeries {
    pub fn names(&self, trace: &Trace) -> Vec<String> {
        match self {
            MonitoredSeries::All => trace.header().split(',').skip(1).map(str::to_owned).collect(),
            MonitoredSeries::Columns(c) => c.clone(),
        }
    }
}

/// Smallest ESS among the monitored columns, with the column that attains it.
pub fn min_ess(trace: &Trace, monitored: &MonitoredSeries) -> Result<(f64, String)> {
    let mut best: Option<(f64, String)> = None;
    for name in monitored.names(trace) {
        let e = ess(&trace.column(&name)?)?;
        if best.as_ref().is_none_or(|(b, _)| e < *b) {
            best = Some((e, name));
        }
    }
    best.ok_or_else(|| Error::config("no series to monitor"))
}

pub fn per_hour(ess: f64, seconds: f64) -> Result<f64> {
    if !(seconds > 0.0) {
        return Err(Error::validation(format!("elapsed time must be positive, got {seconds}")));
    }
    Ok(ess * 3600.0 / seconds)
}

/// Minimum ESS divided by the chain's elapsed wall time in hours.
pub fn min_ess_per_hour(trace: &Trace, monitored: &MonitoredSeries) -> Result<f64> {
    let secs = trace
        .wall_seconds()
        .ok_or_else(|| Error::validation("trace carries no wall time"))?;
    per_hour(min_ess(trace, monitored)?.0, secs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::from_seed;
    use rand_distr::{Distribution, StandardNormal};

    fn ar1(rho: f64, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = from_seed(seed);
        let sd = (1.0 - rho * rho).sqrt();
        let mut x = Vec::with_capacity(n);
        let mut v: f64 = StandardNormal.sample(&mut rng);
        for _ in 0..n {
            x.push(v);
            let z: f64 = StandardNormal.sample(&mut rng);
            v = rho * v + sd * z;
        }
        x
    }

    #[test]
    fn white_noise() {
        let x = ar1(0.0, 100_000, 1);
        let r = ess(&x).unwrap() / 1e5;
        assert!((0.9..=1.1).contains(&r), "{r}");
    }

    #[test]
    fn ar1_half() {
        let x = ar1(0.5, 100_000, 2);
        let e = ess(&x).unwrap();
        let target = 1e5 / 3.0;
        assert!((e - target).abs() < 0.1 * target, "{e}");
    }

    #[test]
    fn alternating_exceeds_length() {
        let x: Vec<f64> = (0..1000).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let e = ess(&x).unwrap();
        assert!(e > 1000.0 && e <= 10_000.0, "{e}");
    }

    #[test]
    fn constant_and_short_rejected() {
        assert!(ess(&[2.5; 50]).is_err());
        assert!(ess(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn affine_invariant() {
        let x = ar1(0.7, 5000, 3);
        let y: Vec<f64> = x.iter().map(|v| -3.0 * v + 100.0).collect();
        let (a, b) = (ess(&x).unwrap(), ess(&y).unwrap());
        assert!((a - b).abs() < 1e-8 * a);
    }

    #[test]
    fn per_hour_arithmetic() {
        assert!((per_hour(100.0, 1800.0).unwrap() - 200.0).abs() < 1e-12);
        let a = per_hour(50.0, 100.0).unwrap();
        let b = per_hour(50.0, 200.0).unwrap();
        assert!((a - 2.0 * b).abs() < 1e-12);
        assert!(per_hour(1.0, 0.0).is_err());
    }
}
