use std::time::Instant;

use crate::dissim::{CouplingScheme, DissimMatrix, LatentConfig};
use crate::error::{Error, Result};

use super::kernel::{grad_log_likelihood_with, log_likelihood_with, Execution};

/// Median wall-clock seconds per evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingRecord {
    pub likelihood_secs: f64,
    pub gradient_secs: f64,
}

impl TimingRecord {
    pub fn total_secs(&self) -> f64 {
        self.likelihood_secs + self.gradient_secs
    }
}

pub fn eval_timer(
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
    reps: usize,
) -> Result<TimingRecord> {
    eval_timer_with(Execution::default(), delta, x, sigma2, scheme, reps)
}

/// Times `reps` likelihood and gradient evaluations after one untimed warm-up
/// of each and reports the medians.
pub fn eval_timer_with(
    exec: Execution,
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
    reps: usize,
) -> Result<TimingRecord> {
    if reps < 3 {
        return Err(Error::config(format!("need at least 3 repetitions, got {reps}")));
    }
    std::hint::black_box(log_likelihood_with(exec, delta, x, sigma2, scheme)?);
    let mut ll = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        std::hint::black_box(log_likelihood_with(exec, delta, x, sigma2, scheme)?);
        ll.push(t.elapsed().as_secs_f64());
    }
    std::hint::black_box(grad_log_likelihood_with(exec, delta, x, sigma2, scheme)?);
    let mut gr = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        std::hint::black_box(grad_log_likelihood_with(exec, delta, x, sigma2, scheme)?);
        gr.push(t.elapsed().as_secs_f64());
    }
    Ok(TimingRecord { likelihood_secs: median_of(&mut ll), gradient_secs: median_of(&mut gr) })
}

pub(crate) fn median_of(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn requires_three_reps() {
        let x = LatentConfig::new(3, 1, vec![0.0, 1.0, 2.0]).unwrap();
        let d = x.pairwise_distances();
        assert!(eval_timer(&d, &x, 1.0, CouplingScheme::Full, 2).is_err());
        let t = eval_timer(&d, &x, 1.0, CouplingScheme::Full, 3).unwrap();
        assert!(t.likelihood_secs >= 0.0 && t.gradient_secs >= 0.0);
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median_of(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median_of(&mut [4.0, 1.0, 3.0, 2.0]), 2.5);
    }
}
