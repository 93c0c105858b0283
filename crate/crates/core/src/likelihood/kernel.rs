use crate::dissim::normal::{log_std_normal_cdf, pdf_over_cdf};
use crate::dissim::{CouplingScheme, DissimMatrix, LatentConfig};
use crate::error::{Error, Result};

use super::coupling::{coupling_count, upper_partners, Partners};
use super::sum::{pairwise_sum, PairwiseSum};

/// How kernels distribute work over rows. Both paths produce bitwise
/// identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Serial
        }
    }
}

#[cfg(feature = "parallel")]
const MIN_ROWS_PER_TASK: usize = 16;

/// Gradient of the log-likelihood with respect to every latent coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientMatrix {
    n_objects: usize,
    dim: usize,
    values: Vec<f64>,
    /// Coupled pairs whose latent distance was exactly zero. Their
    /// contribution is taken to be the zero vector.
    pub singular_pairs: usize,
}

impl GradientMatrix {
    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.values[n * self.dim..(n + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// Precomputed `sigma`-dependent constants.
#[derive(Debug, Clone, Copy)]
struct Scale {
    inv_sigma: f64,
    inv_sigma2: f64,
    half_inv_sigma2: f64,
}

impl Scale {
    fn new(sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::Domain(format!("sigma2 must be positive and finite, got {sigma2}")));
        }
        Ok(Self {
            inv_sigma: 1.0 / sigma2.sqrt(),
            inv_sigma2: 1.0 / sigma2,
            half_inv_sigma2: 0.5 / sigma2,
        })
    }

    /// `(d - d*)^2 / (2 s2) + log Phi(d*/s)`
    #[inline]
    fn pair_term(&self, observed: f64, latent: f64) -> f64 {
        let r = observed - latent;
        r * r * self.half_inv_sigma2 + log_std_normal_cdf(latent * self.inv_sigma)
    }

    /// Scalar factor of `r_{nn'}` divided by `d*`.
    #[inline]
    fn pair_coefficient(&self, observed: f64, latent: f64) -> f64 {
        let hazard = pdf_over_cdf(latent * self.inv_sigma) * self.inv_sigma;
        ((latent - observed) * self.inv_sigma2 + hazard) / latent
    }
}

fn check_inputs(
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
) -> Result<Scale> {
    if delta.n_objects() != x.n_objects() {
        return Err(Error::dim(format!(
            "dissimilarities cover {} objects but the configuration has {}",
            delta.n_objects(),
            x.n_objects()
        )));
    }
    scheme.validate(x.n_objects())?;
    Scale::new(sigma2)
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (p, q) in a.iter().zip(b) {
        let d = p - q;
        s += d * d;
    }
    s
}

fn row_term_sum(
    delta: &DissimMatrix,
    x: &LatentConfig,
    scale: &Scale,
    scheme: CouplingScheme,
    n: usize,
) -> f64 {
    let xn = x.row(n);
    let obs = delta.row(n);
    let mut acc = PairwiseSum::new();
    for m in upper_partners(scheme, n, x.n_objects()) {
        let latent = sq_dist(xn, x.row(m)).sqrt();
        acc.add(scale.pair_term(obs[m], latent));
    }
    acc.total()
}

pub fn log_likelihood(
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
) -> Result<f64> {
    log_likelihood_with(Execution::default(), delta, x, sigma2, scheme)
}

/// Sparse log-likelihood over the pairs retained by `scheme`.
pub fn log_likelihood_with(
    exec: Execution,
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
) -> Result<f64> {
    let scale = check_inputs(delta, x, sigma2, scheme)?;
    let n = x.n_objects();
    let row_sums: Vec<f64> = match exec {
        Execution::Serial => (0..n)
            .map(|i| row_term_sum(delta, x, &scale, scheme, i))
            .collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .with_min_len(MIN_ROWS_PER_TASK)
                .map(|i| row_term_sum(delta, x, &scale, scheme, i))
                .collect()
        }
    };
    let count = coupling_count(scheme, n) as f64;
    let constant = count * 0.5 * (2.0 * std::f64::consts::PI * sigma2).ln();
    Ok(-(constant + pairwise_sum(&row_sums)))
}

/// `-sum_{n' in J_n} r_{nn'}` written into `out`; returns the number of
/// zero-distance partners skipped.
fn gradient_row(
    delta: &DissimMatrix,
    x: &LatentConfig,
    scale: &Scale,
    scheme: CouplingScheme,
    n: usize,
    out: &mut [f64],
) -> usize {
    out.iter_mut().for_each(|v| *v = 0.0);
    let xn = x.row(n);
    let obs = delta.row(n);
    let mut singular = 0;
    for m in Partners::of(scheme, n, x.n_objects()).iter() {
        let xm = x.row(m);
        let latent = sq_dist(xn, xm).sqrt();
        if latent == 0.0 {
            singular += 1;
            continue;
        }
        let c = scale.pair_coefficient(obs[m], latent);
        for ((g, a), b) in out.iter_mut().zip(xn).zip(xm) {
            *g -= c * (a - b);
        }
    }
    singular
}

pub fn grad_log_likelihood(
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
) -> Result<GradientMatrix> {
    grad_log_likelihood_with(Execution::default(), delta, x, sigma2, scheme)
}

/// Gradient of the sparse log-likelihood, one row per object.
pub fn grad_log_likelihood_with(
    exec: Execution,
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
) -> Result<GradientMatrix> {
    let scale = check_inputs(delta, x, sigma2, scheme)?;
    let (n, d) = (x.n_objects(), x.dim());
    let mut values = vec![0.0; n * d];
    if coupling_count(scheme, n) <= PAIR_CACHE_LIMIT {
        let (coefs, singular_pairs) = pair_coefficients(exec, delta, x, &scale, scheme);
        let block = |(b, out): (usize, &mut [f64])| cached_gradient_block(x, &coefs, scheme, b * ROW_BLOCK, out);
        match exec {
            Execution::Serial => values.chunks_mut(ROW_BLOCK * d).enumerate().for_each(block),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                values.par_chunks_mut(ROW_BLOCK * d).enumerate().for_each(block)
            }
        }
        return Ok(GradientMatrix { n_objects: n, dim: d, values, singular_pairs });
    }
    let singular_rows: usize = match exec {
        Execution::Serial => values
            .chunks_mut(d)
            .enumerate()
            .map(|(i, out)| gradient_row(delta, x, &scale, scheme, i, out))
            .sum(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            values
                .par_chunks_mut(d)
                .with_min_len(MIN_ROWS_PER_TASK)
                .enumerate()
                .map(|(i, out)| gradient_row(delta, x, &scale, scheme, i, out))
                .sum()
        }
    };
    Ok(GradientMatrix {
        n_objects: n,
        dim: d,
        values,
        // Each singular pair is seen from both of its rows.
        singular_pairs: singular_rows / 2,
    })
}

/// Largest number of pairs whose coefficients are cached between the two
/// rows that share them. Above it each row recomputes its own.
const PAIR_CACHE_LIMIT: usize = 1 << 25;

/// Output rows per task when reading cached coefficients.
const ROW_BLOCK: usize = 64;

/// Coefficient of every retained pair, stored by its lower row in ascending
/// partner order. Zero-distance pairs get a zero coefficient.
fn pair_coefficients(
    exec: Execution,
    delta: &DissimMatrix,
    x: &LatentConfig,
    scale: &Scale,
    scheme: CouplingScheme,
) -> (Vec<Vec<f64>>, usize) {
    let n_objects = x.n_objects();
    let row = |n: usize| {
        let xn = x.row(n);
        let obs = delta.row(n);
        let mut singular = 0;
        let coefs = upper_partners(scheme, n, n_objects)
            .map(|m| {
                let latent = sq_dist(xn, x.row(m)).sqrt();
                if latent == 0.0 {
                    singular += 1;
                    0.0
                } else {
                    scale.pair_coefficient(obs[m], latent)
                }
            })
            .collect::<Vec<_>>();
        (coefs, singular)
    };
    let rows: Vec<(Vec<f64>, usize)> = match exec {
        Execution::Serial => (0..n_objects).map(row).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n_objects).into_par_iter().with_min_len(MIN_ROWS_PER_TASK).map(row).collect()
        }
    };
    let singular = rows.iter().map(|r| r.1).sum();
    (rows.into_iter().map(|r| r.0).collect(), singular)
}

/// Gradient rows `first..first + out.len() / d` from cached coefficients.
/// Each row accumulates its lower partners and then its upper partners in
/// ascending order, as [`gradient_row`] does, while the lower partners are
/// read row by row from the coefficient store.
fn cached_gradient_block(
    x: &LatentConfig,
    coefs: &[Vec<f64>],
    scheme: CouplingScheme,
    first: usize,
    out: &mut [f64],
) {
    let (n_objects, d) = (x.n_objects(), x.dim());
    let last = first + out.len() / d;
    out.iter_mut().for_each(|v| *v = 0.0);
    let lowest = Partners::of(scheme, first, n_objects).below.start;
    for m in lowest..last {
        let upper = upper_partners(scheme, m, n_objects);
        let (from, to) = (upper.start.max(first), upper.end.min(last));
        if from >= to {
            continue;
        }
        let xm = x.row(m);
        for (n, &c) in (from..to).zip(&coefs[m][from - m - 1..to - m - 1]) {
            let g = &mut out[(n - first) * d..(n - first + 1) * d];
            for ((g, a), b) in g.iter_mut().zip(x.row(n)).zip(xm) {
                *g -= c * (a - b);
            }
        }
    }
    for n in first..last {
        let xn = x.row(n);
        let g = &mut out[(n - first) * d..(n - first + 1) * d];
        for (m, &c) in upper_partners(scheme, n, n_objects).zip(&coefs[n]) {
            for ((g, a), b) in g.iter_mut().zip(xn).zip(x.row(m)) {
                *g -= c * (a - b);
            }
        }
    }
}

/// Log-likelihood terms involving object `n` when its location is replaced
/// by `candidate`, excluding the `log(2 pi s2)/2` constants.
///
/// Differences of this quantity between two candidate locations equal the
/// corresponding difference of the full sparse log-likelihood.
pub fn object_log_likelihood(
    delta: &DissimMatrix,
    x: &LatentConfig,
    sigma2: f64,
    scheme: CouplingScheme,
    n: usize,
    candidate: &[f64],
) -> Result<f64> {
    let scale = check_inputs(delta, x, sigma2, scheme)?;
    if candidate.len() != x.dim() {
        return Err(Error::dim("candidate location has the wrong dimension"));
    }
    if n >= x.n_objects() {
        return Err(Error::config(format!("object index {n} out of range")));
    }
    Ok(object_terms(delta, x, &scale, scheme, n, candidate))
}

fn object_terms(
    delta: &DissimMatrix,
    x: &LatentConfig,
    scale: &Scale,
    scheme: CouplingScheme,
    n: usize,
    candidate: &[f64],
) -> f64 {
    let obs = delta.row(n);
    let mut acc = PairwiseSum::new();
    for m in Partners::of(scheme, n, x.n_objects()).iter() {
        let latent = sq_dist(candidate, x.row(m)).sqrt();
        acc.add(scale.pair_term(obs[m], latent));
    }
    -acc.total()
}

/// Unchecked variant used inside the samplers, where inputs are validated once.
pub(crate) struct ObjectKernel<'a> {
    delta: &'a DissimMatrix,
    scheme: CouplingScheme,
    scale: Scale,
}

impl<'a> ObjectKernel<'a> {
    pub(crate) fn new(
        delta: &'a DissimMatrix,
        x: &LatentConfig,
        sigma2: f64,
        scheme: CouplingScheme,
    ) -> Result<Self> {
        let scale = check_inputs(delta, x, sigma2, scheme)?;
        Ok(Self { delta, scheme, scale })
    }

    pub(crate) fn terms(&self, x: &LatentConfig, n: usize, candidate: &[f64]) -> f64 {
        object_terms(self.delta, x, &self.scale, self.scheme, n, candidate)
    }
}
