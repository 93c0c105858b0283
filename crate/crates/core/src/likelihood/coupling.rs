use std::ops::Range;

use crate::dissim::CouplingScheme;
use crate::error::{Error, Result};

/// The partners `J_n` of one object as two ascending index ranges, the first
/// entirely below `n` and the second entirely above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partners {
    pub below: Range<usize>,
    pub above: Range<usize>,
}

impl Partners {
    pub(crate) fn of(scheme: CouplingScheme, n: usize, n_objects: usize) -> Self {
        match scheme {
            CouplingScheme::Full => Self { below: 0..n, above: n + 1..n_objects },
            CouplingScheme::Banded(b) => Self {
                below: n.saturating_sub(b)..n,
                above: n + 1..(n + b + 1).min(n_objects),
            },
            CouplingScheme::Landmark(l) if n < l => Self { below: 0..n, above: n + 1..n_objects },
            CouplingScheme::Landmark(l) => Self { below: 0..l, above: n..n },
        }
    }

    pub fn len(&self) -> usize {
        self.below.len() + self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.below.clone().chain(self.above.clone())
    }
}

/// Partners of `n` with a larger index: the pairs `(n, n')` that row `n`
/// owns in the likelihood sum.
#[inline]
pub(crate) fn upper_partners(scheme: CouplingScheme, n: usize, n_objects: usize) -> Range<usize> {
    match scheme {
        CouplingScheme::Full => n + 1..n_objects,
        CouplingScheme::Banded(b) => n + 1..(n + b + 1).min(n_objects),
        CouplingScheme::Landmark(l) if n < l => n + 1..n_objects,
        CouplingScheme::Landmark(_) => n..n,
    }
}

/// The index set `J_n` of object `n` (zero-based), in ascending order.
pub fn coupling_set(scheme: CouplingScheme, n: usize, n_objects: usize) -> Result<Vec<usize>> {
    scheme.validate(n_objects)?;
    if n >= n_objects {
        return Err(Error::config(format!("object index {n} out of range for {n_objects} objects")));
    }
    Ok(Partners::of(scheme, n, n_objects).iter().collect())
}

/// Number of unordered pairs retained by `scheme`.
pub fn coupling_count(scheme: CouplingScheme, n_objects: usize) -> usize {
    let n = n_objects;
    match scheme {
        CouplingScheme::Full => n * n.saturating_sub(1) / 2,
        CouplingScheme::Banded(b) => {
            let b = b.min(n.saturating_sub(1));
            // sum_{k=1}^{b} (n - k)
            b * n - b * (b + 1) / 2
        }
        CouplingScheme::Landmark(l) => {
            let l = l.min(n);
            l * n - l * (l + 1) / 2
        }
    }
}

/// Iterates the retained unordered pairs `(n, n')`, `n < n'`, in ascending
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct CouplingIter {
    scheme: CouplingScheme,
    n_objects: usize,
    row: usize,
    cols: Range<usize>,
}

impl CouplingIter {
    pub fn new(scheme: CouplingScheme, n_objects: usize) -> Result<Self> {
        scheme.validate(n_objects)?;
        Ok(Self {
            scheme,
            n_objects,
            row: 0,
            cols: upper_partners(scheme, 0, n_objects),
        })
    }
}

impl Iterator for CouplingIter {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        loop {
            if let Some(c) = self.cols.next() {
                return Some((self.row, c));
            }
            self.row += 1;
            if self.row >= self.n_objects {
                return None;
            }
            self.cols = upper_partners(self.scheme, self.row, self.n_objects);
        }
    }
}
