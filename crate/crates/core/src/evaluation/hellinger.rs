use crate::error::{Error, Result};

pub const HELLINGER_BINS: usize = 512;

/// Histogram Hellinger distance between two sample sets on a shared
/// 512-bin grid spanning both ranges, padded by 5% on each side.
pub fn hellinger(a: &[f64], b: &[f64]) -> Result<f64> {
    hellinger_with_bins(a, b, HELLINGER_BINS)
}

pub fn hellinger_with_bins(a: &[f64], b: &[f64], bins: usize) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::validation("Hellinger distance needs two nonempty sample sets"));
    }
    if bins == 0 {
        return Err(Error::config("bin count must be positive"));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::validation("samples contain non-finite values"));
    }
    let (lo, hi) = a
        .iter()
        .chain(b)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 * lo.abs().max(1.0) };
    let (lo, hi) = (lo - pad, hi + pad);
    let width = (hi - lo) / bins as f64;
    let histogram = |xs: &[f64]| {
        let mut h = vec![0.0; bins];
        for &v in xs {
            let k = (((v - lo) / width) as usize).min(bins - 1);
            h[k] += 1.0;
        }
        let total = xs.len() as f64;
        h.iter_mut().for_each(|c| *c /= total);
        h
    };
    let (p, q) = (histogram(a), histogram(b));
    let bc: f64 = p.iter().zip(&q).map(|(x, y)| (x * y).sqrt()).sum();
    Ok((1.0 - bc).max(0.0).sqrt())
}
