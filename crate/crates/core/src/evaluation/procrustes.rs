use nalgebra::{DMatrix, RowDVector};
use serde::{Deserialize, Serialize};

use crate::dissim::LatentConfig;
use crate::error::{Error, Result};
use crate::samplers::Trace;

/// Result of aligning a target configuration onto a reference.
#[derive(Debug, Clone)]
pub struct Alignment {
    pub aligned: LatentConfig,
    /// Orthogonal `D x D` map applied to the centred target (row vectors).
    pub rotation: DMatrix<f64>,
    /// Squared Frobenius distance between aligned target and reference.
    pub objective: f64,
    /// The cross-covariance was rank deficient, so the minimiser is not unique.
    pub rank_deficient: bool,
}

fn centred(x: &LatentConfig) -> (DMatrix<f64>, RowDVector<f64>) {
    let m = x.to_matrix();
    let mean = m.row_mean();
    let mut c = m;
    for mut row in c.row_iter_mut() {
        row -= &mean;
    }
    (c, mean)
}

/// Orthogonal Procrustes without scaling: translation plus rotation or
/// reflection minimising the Frobenius distance from `target` to `reference`.
pub fn procrustes(reference: &LatentConfig, target: &LatentConfig) -> Result<Alignment> {
    if reference.n_objects() != target.n_objects() || reference.dim() != target.dim() {
        return Err(Error::dim(format!(
            "reference is {}x{} but target is {}x{}",
            reference.n_objects(),
            reference.dim(),
            target.n_objects(),
            target.dim()
        )));
    }
    let (r, r_mean) = centred(reference);
    let (t, _) = centred(target);
    let cross = t.transpose() * &r;
    let svd = cross.clone().svd(true, true);
    let (u, v_t) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return Err(Error::Numerical("SVD of the cross-covariance failed".into())),
    };
    let smax = svd.singular_values.max();
    let rank_deficient = svd.singular_values.iter().any(|&s| s <= 1e-12 * smax.max(f64::MIN_POSITIVE));
    let rotation = u * v_t;
    let mut aligned = &t * &rotation;
    let objective = (&aligned - &r).norm_squared();
    for mut row in aligned.row_iter_mut() {
        row += &r_mean;
    }
    Ok(Alignment { aligned: LatentConfig::from_matrix(&aligned)?, rotation, objective, rank_deficient })
}

pub fn procrustes_align(reference: &LatentConfig, target: &LatentConfig) -> Result<LatentConfig> {
    procrustes(reference, target).map(|a| a.aligned)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Summary {
    Mean,
    Median,
}

impl std::str::FromStr for Summary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Summary::Mean),
            "median" => Ok(Summary::Median),
            _ => Err(Error::config(format!("unknown summary `{s}`"))),
        }
    }
}

/// Aligns every snapshot of `trace` to `reference` and summarises each
/// coordinate across snapshots.
pub fn align_trace(trace: &Trace, reference: &LatentConfig, summary: Summary) -> Result<LatentConfig> {
    if trace.is_empty() {
        return Err(Error::validation("trace has no samples"));
    }
    if reference.n_objects() != trace.n_objects || reference.dim() != trace.dim {
        return Err(Error::validation(format!(
            "reference is {}x{} but trace snapshots are {}x{}",
            reference.n_objects(),
            reference.dim(),
            trace.n_objects,
            trace.dim
        )));
    }
    let aligned: Vec<LatentConfig> = trace
        .snapshots()?
        .iter()
        .map(|s| procrustes_align(reference, s))
        .collect::<Result<_>>()?;
    let len = trace.n_objects * trace.dim;
    let mut out = vec![0.0; len];
    let mut column = vec![0.0; aligned.len()];
    for (k, o) in out.iter_mut().enumerate() {
        for (c, a) in column.iter_mut().zip(&aligned) {
            *c = a.as_slice()[k];
        }
        *o = match summary {
            Summary::Mean => column.iter().sum::<f64>() / column.len() as f64,
            Summary::Median => crate::likelihood::median_of(&mut column),
        };
    }
    LatentConfig::new(trace.n_objects, trace.dim, out)
}
