use crate::error::{Error, Result};

/// Symmetric matrix of observed dissimilarities with a zero diagonal.
///
/// Storage is dense row-major over the full square.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimMatrix {
    n_objects: usize,
    values: Vec<f64>,
}

/// Largest tolerated asymmetry `|d(i,j) - d(j,i)|` when validating input.
pub const SYMMETRY_TOL: f64 = 1e-8;

impl DissimMatrix {
    /// Validates and stores a square matrix. Entries that are asymmetric
    /// within [`SYMMETRY_TOL`] are replaced by their average.
    pub fn new(n_objects: usize, mut values: Vec<f64>) -> Result<Self> {
        let n = n_objects;
        if n < 2 {
            return Err(Error::dim(format!("need at least 2 objects, got {n}")));
        }
        if values.len() != n * n {
            return Err(Error::dim(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                values.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() {
                    return Err(Error::validation(format!(
                        "non-finite entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if v < 0.0 {
                    return Err(Error::validation(format!(
                        "negative entry {v} at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if values[i * n + i].abs() > SYMMETRY_TOL {
                return Err(Error::validation(format!(
                    "non-zero diagonal entry {} at ({}, {})",
                    values[i * n + i],
                    i + 1,
                    i + 1
                )));
            }
            values[i * n + i] = 0.0;
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (values[i * n + j], values[j * n + i]);
                if (a - b).abs() > SYMMETRY_TOL {
                    return Err(Error::validation(format!(
                        "asymmetric entries at ({}, {}) = {a} and ({}, {}) = {b}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if a != b {
                    let m = 0.5 * (a + b);
                    values[i * n + j] = m;
                    values[j * n + i] = m;
                }
            }
        }
        Ok(Self { n_objects: n, values })
    }

    pub(crate) fn from_symmetric_unchecked(n_objects: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), n_objects * n_objects);
        Self { n_objects, values }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::validation(format!(
                "matrix is not square: {n} rows but row lengths {:?}",
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        Self::new(n, rows.concat())
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_objects + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_objects..(i + 1) * self.n_objects]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// Number of unordered pairs, `N(N-1)/2`.
    pub fn n_pairs(&self) -> usize {
        self.n_objects * (self.n_objects - 1) / 2
    }

    /// Reorders objects: entry `(i, j)` of the result is entry
    /// `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_objects;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::config("not a permutation of the object indices"));
        }
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Ok(Self::from_symmetric_unchecked(n, values))
    }
}
