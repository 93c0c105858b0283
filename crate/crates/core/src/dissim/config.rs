use crate::dissim::DissimMatrix;
use crate::error::{Error, Result};

/// Euclidean distance between two points of equal dimension.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::dim(format!(
            "points have dimensions {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dist(a, b))
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Latent coordinates of `N` objects in `D` dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentConfig {
    n_objects: usize,
    dim: usize,
    coords: Vec<f64>,
}

impl LatentConfig {
    pub fn new(n_objects: usize, dim: usize, coords: Vec<f64>) -> Result<Self> {
        if n_objects < 2 {
            return Err(Error::dim(format!("need at least 2 objects, got {n_objects}")));
        }
        if dim < 1 {
            return Err(Error::dim("latent dimension must be at least 1"));
        }
        if coords.len() != n_objects * dim {
            return Err(Error::dim(format!(
                "expected {} coordinates for {n_objects}x{dim}, got {}",
                n_objects * dim,
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|v| !v.is_finite()) {
            return Err(Error::validation(format!(
                "non-finite coordinate at row {}, column {}",
                i / dim + 1,
                i % dim + 1
            )));
        }
        Ok(Self { n_objects, dim, coords })
    }

    pub fn zeros(n_objects: usize, dim: usize) -> Result<Self> {
        Self::new(n_objects, dim, vec![0.0; n_objects * dim])
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::dim("ragged coordinate rows"));
        }
        Self::new(rows.len(), dim, rows.concat())
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.coords[n * self.dim..(n + 1) * self.dim]
    }

    pub fn row_mut(&mut self, n: usize) -> &mut [f64] {
        &mut self.coords[n * self.dim..(n + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    /// Mutable access to the raw coordinates. Callers must keep entries finite.
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.coords
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coords
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        dist(self.row(a), self.row(b))
    }

    /// All pairwise Euclidean distances.
    pub fn pairwise_distances(&self) -> DissimMatrix {
        let n = self.n_objects;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = self.distance(i, j);
                values[i * n + j] = d;
                values[j * n + i] = d;
            }
        }
        DissimMatrix::from_symmetric_unchecked(n, values)
    }

    pub fn to_matrix(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.n_objects, self.dim, &self.coords)
    }

    pub fn from_matrix(m: &nalgebra::DMatrix<f64>) -> Result<Self> {
        let (n, d) = m.shape();
        let mut coords = Vec::with_capacity(n * d);
        for i in 0..n {
            coords.extend(m.row(i).iter());
        }
        Self::new(n, d, coords)
    }
}
