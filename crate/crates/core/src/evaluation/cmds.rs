use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::dissim::{DissimMatrix, LatentConfig};
use crate::error::{Error, Result};
use crate::rng;

/// How the top eigenpairs of the double-centred matrix are found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    /// Dense symmetric eigendecomposition, `O(N^3)`.
    Dense,
    /// Block subspace iteration applying `-J D^2 J / 2` matrix-free, `O(N^2)` per sweep.
    Subspace,
    /// `Dense` up to `DENSE_LIMIT` objects, `Subspace` beyond.
    Auto,
}

pub const DENSE_LIMIT: usize = 1500;

/// Classical (Torgerson) MDS: coordinates from the top `dim` eigenpairs of
/// `B = -J D^2 J / 2`. Negative eigenvalues are floored at zero, zeroing the
/// corresponding coordinate column.
pub fn classical_mds(delta: &DissimMatrix, dim: usize) -> Result<LatentConfig> {
    classical_mds_with(delta, dim, EigenMethod::Auto)
}

pub fn classical_mds_with(delta: &DissimMatrix, dim: usize, method: EigenMethod) -> Result<LatentConfig> {
    let n = delta.n_objects();
    if dim == 0 || n < dim + 1 {
        return Err(Error::config(format!(
            "classical MDS in {dim} dimensions needs at least {} objects, got {n}",
            dim + 1
        )));
    }
    let method = match method {
        EigenMethod::Auto if n <= DENSE_LIMIT => EigenMethod::Dense,
        EigenMethod::Auto => EigenMethod::Subspace,
        m => m,
    };
    let (values, vectors) = match method {
        EigenMethod::Dense => dense_top(delta, dim)?,
        _ => subspace_top(delta, dim)?,
    };
    let mut coords = DMatrix::zeros(n, dim);
    for k in 0..dim {
        let scale = values[k].max(0.0).sqrt();
        coords.set_column(k, &(vectors.column(k) * scale));
    }
    LatentConfig::from_matrix(&coords)
}

fn double_centred(delta: &DissimMatrix) -> DMatrix<f64> {
    let n = delta.n_objects();
    let mut b = DMatrix::from_fn(n, n, |i, j| {
        let d = delta.get(i, j);
        -0.5 * d * d
    });
    let row_means: Vec<f64> = (0..n).map(|i| b.row(i).sum() / n as f64).collect();
    let grand = row_means.iter().sum::<f64>() / n as f64;
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] += grand - row_means[i] - row_means[j];
        }
    }
    b
}

fn dense_top(delta: &DissimMatrix, dim: usize) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let b = double_centred(delta);
    let eig = SymmetricEigen::try_new(b, 1e-14, 10_000).ok_or_else(|| {
        Error::Numerical("eigendecomposition did not converge; use a random initialisation".into())
    })?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order[..dim].iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_columns(&order[..dim].iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect::<Vec<_>>());
    Ok((values, vectors))
}

/// `B v` with `B = -J D^2 J / 2`, without forming `B`.
fn apply_b(delta: &DissimMatrix, v: &DMatrix<f64>) -> DMatrix<f64> {
    let n = delta.n_objects();
    let k = v.ncols();
    let mut centred = v.clone();
    for c in 0..k {
        let mean = centred.column(c).sum() / n as f64;
        centred.column_mut(c).add_scalar_mut(-mean);
    }
    let mut out = DMatrix::zeros(n, k);
    for i in 0..n {
        let row = delta.row(i);
        for c in 0..k {
            let col = centred.column(c);
            let s: f64 = row.iter().zip(col.iter()).map(|(d, x)| d * d * x).sum();
            out[(i, c)] = -0.5 * s;
        }
    }
    for c in 0..k {
        let mean = out.column(c).sum() / n as f64;
        out.column_mut(c).add_scalar_mut(-mean);
    }
    out
}

fn subspace_top(delta: &DissimMatrix, dim: usize) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = delta.n_objects();
    let k = (dim + 8).min(n);
    let mut r = rng::from_seed(0x5eed);
    let mut v = DMatrix::from_fn(n, k, |_, _| rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut r));
    v = v.qr().q();
    let mut prev: Option<DVector<f64>> = None;
    for _ in 0..1000 {
        let w = apply_b(delta, &v);
        // Rayleigh-Ritz on the current basis.
        let t = v.transpose() * &w;
        let t = (&t + t.transpose()) * 0.5;
        let eig = SymmetricEigen::try_new(t, 1e-14, 10_000)
            .ok_or_else(|| Error::Numerical("Rayleigh-Ritz step failed to converge".into()))?;
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let vals = DVector::from_iterator(dim, order[..dim].iter().map(|&i| eig.eigenvalues[i]));
        let converged = prev.as_ref().is_some_and(|p| {
            (p - &vals).amax() <= 1e-12 * vals.amax().max(1e-300)
        });
        prev = Some(vals.clone());
        if converged {
            let ritz = &v * &eig.eigenvectors;
            let vectors = DMatrix::from_columns(&order[..dim].iter().map(|&i| ritz.column(i).into_owned()).collect::<Vec<_>>());
            return Ok((vals.iter().copied().collect(), vectors));
        }
        v = w.qr().q();
    }
    Err(Error::Numerical("subspace iteration did not converge; use a random initialisation".into()))
}
