use rand::seq::index;

use crate::dissim::{DissimMatrix, LatentConfig};
use crate::error::{Error, Result};
use crate::rng::SbmdsRng;
use crate::samplers::Trace;

/// Offset of row `i` in the row-major strict upper triangle of an `n x n` matrix.
fn row_offset(n: usize, i: usize) -> usize {
    i * (2 * n - i - 1) / 2
}

fn unrank(n: usize, t: usize) -> (usize, usize) {
    // Initial guess from the quadratic, then correct for rounding.
    let nf = n as f64;
    let disc = (2.0 * nf - 1.0).powi(2) - 8.0 * t as f64;
    let mut i = (((2.0 * nf - 1.0) - disc.max(0.0).sqrt()) / 2.0).floor() as usize;
    i = i.min(n - 2);
    while i > 0 && row_offset(n, i) > t {
        i -= 1;
    }
    while row_offset(n, i + 1) <= t {
        i += 1;
    }
    (i, i + 1 + t - row_offset(n, i))
}

/// Draws `k` distinct unordered pairs uniformly from the `n(n-1)/2` available.
pub fn sample_pairs(n: usize, k: usize, rng: &mut SbmdsRng) -> Vec<(usize, usize)> {
    let m = n * n.saturating_sub(1) / 2;
    let k = k.min(m);
    let mut ranks = index::sample(rng, m, k).into_vec();
    ranks.sort_unstable();
    ranks.into_iter().map(|t| unrank(n, t)).collect()
}

/// MSE-bar over an explicit list of pairs.
pub fn mean_mse_pairs(trace: &Trace, truth: &DissimMatrix, pairs: &[(usize, usize)]) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::validation("trace has no samples"));
    }
    if truth.n_objects() != trace.n_objects {
        return Err(Error::dim(format!(
            "truth has {} objects but trace has {}",
            truth.n_objects(),
            trace.n_objects
        )));
    }
    if pairs.is_empty() {
        return Err(Error::validation("no pairs to evaluate"));
    }
    let dim = trace.dim;
    let mut total = 0.0;
    for sample in &trace.samples {
        let x = &sample.x;
        let mut acc = 0.0;
        for &(i, j) in pairs {
            let d = crate::dissim::config::dist(&x[i * dim..(i + 1) * dim], &x[j * dim..(j + 1) * dim]);
            let e = d - truth.get(i, j);
            acc += e * e;
        }
        total += acc / pairs.len() as f64;
    }
    Ok(total / trace.len() as f64)
}

/// Mean over retained samples and unordered pairs of the squared error between
/// snapshot distances and true distances. Uses every pair when there are at
/// most `max_pairs`, otherwise a uniform subsample of that size.
pub fn mean_mse(trace: &Trace, truth: &DissimMatrix, max_pairs: usize, rng: &mut SbmdsRng) -> Result<f64> {
    let n = truth.n_objects();
    let m = n * (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = if m <= max_pairs {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    } else {
        sample_pairs(n, max_pairs, rng)
    };
    mean_mse_pairs(trace, truth, &pairs)
}

/// Mean squared distance error of a single configuration over all pairs.
pub fn config_mse(x: &LatentConfig, truth: &DissimMatrix) -> Result<f64> {
    let n = x.n_objects();
    if truth.n_objects() != n {
        return Err(Error::dim(format!("truth has {} objects but config has {n}", truth.n_objects())));
    }
    let mut acc = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let e = x.distance(i, j) - truth.get(i, j);
            acc += e * e;
        }
    }
    Ok(acc / (n * (n - 1) / 2) as f64)
}
