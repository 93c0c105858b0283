use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which object pairs enter the likelihood.
///
/// Objects are indexed from zero; the landmarks of `Landmark(L)` are objects
/// `0..L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CouplingScheme {
    Full,
    /// Pairs at most `B` positions apart.
    Banded(usize),
    /// Every pair involving one of the first `L` objects.
    Landmark(usize),
}

impl CouplingScheme {
    pub fn validate(&self, n_objects: usize) -> Result<()> {
        match *self {
            CouplingScheme::Full => Ok(()),
            CouplingScheme::Banded(b) if b >= 1 && b < n_objects => Ok(()),
            CouplingScheme::Banded(b) => Err(Error::config(format!(
                "band count {b} outside [1, {}]",
                n_objects.saturating_sub(1)
            ))),
            CouplingScheme::Landmark(l) if l >= 1 && l <= n_objects => Ok(()),
            CouplingScheme::Landmark(l) => Err(Error::config(format!(
                "landmark count {l} outside [1, {n_objects}]"
            ))),
        }
    }

    /// Whether the scheme retains every unordered pair for `n_objects` objects.
    pub fn is_complete(&self, n_objects: usize) -> bool {
        match *self {
            CouplingScheme::Full => true,
            CouplingScheme::Banded(b) => b + 1 >= n_objects,
            CouplingScheme::Landmark(l) => l + 1 >= n_objects,
        }
    }
}

/// `ceil(D * sqrt(N))`, the suggested band or landmark count for an embedding
/// of `n_objects` in `dim` dimensions, clamped to a valid band count.
pub fn suggested_band_count(n_objects: usize, dim: usize) -> usize {
    let b = (dim as f64 * (n_objects as f64).sqrt()).ceil() as usize;
    b.clamp(1, n_objects.saturating_sub(1).max(1))
}

impl fmt::Display for CouplingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CouplingScheme::Full => write!(f, "full"),
            CouplingScheme::Banded(b) => write!(f, "banded:{b}"),
            CouplingScheme::Landmark(l) => write!(f, "landmark:{l}"),
        }
    }
}

impl FromStr for CouplingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("full") {
            return Ok(CouplingScheme::Full);
        }
        let (kind, count) = s
            .split_once(':')
            .ok_or_else(|| Error::config(format!("unrecognised coupling scheme `{s}`")))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("bad count in coupling scheme `{s}`")))?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "banded" | "band" => Ok(CouplingScheme::Banded(count)),
            "landmark" | "landmarks" => Ok(CouplingScheme::Landmark(count)),
            _ => Err(Error::config(format!("unrecognised coupling scheme `{s}`"))),
        }
    }
}

impl From<CouplingScheme> for String {
    fn from(s: CouplingScheme) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for CouplingScheme {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["full", "banded:3", "landmark:10"] {
            let scheme: CouplingScheme = s.parse().unwrap();
            assert_eq!(scheme.to_string(), s);
        }
        assert!("banded".parse::<CouplingScheme>().is_err());
        assert!("ring:2".parse::<CouplingScheme>().is_err());
    }

    #[test]
    fn validation_ranges() {
        assert!(CouplingScheme::Banded(4).validate(5).is_ok());
        assert!(CouplingScheme::Banded(5).validate(5).is_err());
        assert!(CouplingScheme::Banded(0).validate(5).is_err());
        assert!(CouplingScheme::Landmark(5).validate(5).is_ok());
        assert!(CouplingScheme::Landmark(6).validate(5).is_err());
    }

    #[test]
    fn band_heuristic() {
        assert_eq!(suggested_band_count(100, 2), 20);
        assert_eq!(suggested_band_count(1370, 6), 223);
        assert_eq!(suggested_band_count(4, 3), 3);
    }
}
