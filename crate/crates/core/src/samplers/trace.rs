use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::chain::SamplerConfig;
use super::prior::PriorSpec;
use crate::dissim::{CouplingScheme, LatentConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptCounts {
    pub location_accepted: u64,
    pub location_proposed: u64,
    pub sigma2_accepted: u64,
    pub sigma2_proposed: u64,
    pub divergences: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceSummary {
    pub location_rate: f64,
    pub location_rate_post_burn_in: f64,
    pub sigma2_rate: f64,
    pub sigma2_rate_post_burn_in: f64,
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

impl AcceptanceSummary {
    pub(crate) fn new(total: &AcceptCounts, at_burn_in: &AcceptCounts) -> Self {
        Self {
            location_rate: ratio(total.location_accepted, total.location_proposed),
            location_rate_post_burn_in: ratio(
                total.location_accepted - at_burn_in.location_accepted,
                total.location_proposed - at_burn_in.location_proposed,
            ),
            sigma2_rate: ratio(total.sigma2_accepted, total.sigma2_proposed),
            sigma2_rate_post_burn_in: ratio(
                total.sigma2_accepted - at_burn_in.sigma2_accepted,
                total.sigma2_proposed - at_burn_in.sigma2_proposed,
            ),
        }
    }
}

/// Run metadata written next to the trace CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub n_objects: usize,
    pub dim: usize,
    pub scheme: CouplingScheme,
    pub config: SamplerConfig,
    pub priors: PriorSpec,
    pub acceptance: AcceptanceSummary,
    pub counts: AcceptCounts,
    pub divergences: u64,
    pub burn_in_location_scale: f64,
    pub final_location_scale: f64,
    pub final_sigma2_scale: f64,
    /// Retained samples in which two coupled objects coincided exactly.
    pub singular_samples: u64,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSample {
    pub iteration: u64,
    pub sigma2: f64,
    /// Row-major `N x D` snapshot of the latent locations.
    pub x: Vec<f64>,
}

/// Retained posterior samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub n_objects: usize,
    pub dim: usize,
    pub samples: Vec<TraceSample>,
    /// Present for traces produced in-process or read with their sidecar.
    pub meta: Option<TraceMeta>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn snapshot(&self, k: usize) -> Result<LatentConfig> {
        LatentConfig::new(self.n_objects, self.dim, self.samples[k].x.clone())
    }

    pub fn snapshots(&self) -> Result<Vec<LatentConfig>> {
        (0..self.len()).map(|k| self.snapshot(k)).collect()
    }

    pub fn sigma2_series(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.sigma2).collect()
    }

    /// Series of coordinate `d` of object `n` (zero-based).
    pub fn coordinate_series(&self, n: usize, d: usize) -> Vec<f64> {
        let k = n * self.dim + d;
        self.samples.iter().map(|s| s.x[k]).collect()
    }

    /// Series of the latent distance between objects `i` and `j`.
    pub fn distance_series(&self, i: usize, j: usize) -> Vec<f64> {
        let d = self.dim;
        self.samples
            .iter()
            .map(|s| crate::dissim::config::dist(&s.x[i * d..(i + 1) * d], &s.x[j * d..(j + 1) * d]))
            .collect()
    }

    pub fn wall_seconds(&self) -> Option<f64> {
        self.meta.as_ref().map(|m| m.wall_seconds)
    }

    /// Scalar column by CSV header name (`sigma2` or `x_<n>_<d>`, one-based).
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        if name == "sigma2" {
            return Ok(self.sigma2_series());
        }
        let parse = || -> Option<(usize, usize)> {
            let rest = name.strip_prefix("x_")?;
            let (a, b) = rest.split_once('_')?;
            Some((a.parse().ok()?, b.parse().ok()?))
        };
        match parse() {
            Some((n, d)) if (1..=self.n_objects).contains(&n) && (1..=self.dim).contains(&d) => {
                Ok(self.coordinate_series(n - 1, d - 1))
            }
            _ => Err(Error::config(format!("no trace column named `{name}`"))),
        }
    }

    pub fn header(&self) -> String {
        let mut h = String::from("iter,sigma2");
        for n in 1..=self.n_objects {
            for d in 1..=self.dim {
                h.push_str(&format!(",x_{n}_{d}"));
            }
        }
        h
    }

    /// `iter,sigma2,x_1_1,...,x_N_D`, one row per retained sample.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", self.header())?;
        for s in &self.samples {
            write!(out, "{},{}", s.iteration, s.sigma2)?;
            for v in &s.x {
                write!(out, ",{v}")?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty trace file".into() })??;
        let cols: Vec<&str> = header.trim().split(',').collect();
        if cols.len() < 3 || cols[0] != "iter" || cols[1] != "sigma2" {
            return Err(Error::Parse { line: 1, msg: "expected header `iter,sigma2,x_1_1,...`".into() });
        }
        let last = cols[cols.len() - 1];
        let (n_objects, dim) = last
            .strip_prefix("x_")
            .and_then(|r| r.split_once('_'))
            .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("bad last column `{last}`") })?;
        if cols.len() != 2 + n_objects * dim {
            return Err(Error::Parse { line: 1, msg: "header column count does not match x_N_D".into() });
        }
        let mut samples = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line_no = i + 2;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != cols.len() {
                return Err(Error::Parse { line: line_no, msg: format!("expected {} fields", cols.len()) });
            }
            let bad = |f: &str| Error::Parse { line: line_no, msg: format!("`{f}` is not a number") };
            let iteration = fields[0].parse::<u64>().map_err(|_| bad(fields[0]))?;
            let sigma2 = fields[1].parse::<f64>().map_err(|_| bad(fields[1]))?;
            let x = fields[2..]
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| bad(f)))
                .collect::<Result<Vec<_>>>()?;
            samples.push(TraceSample { iteration, sigma2, x });
        }
        Ok(Self { n_objects, dim, samples, meta: None })
    }
}
