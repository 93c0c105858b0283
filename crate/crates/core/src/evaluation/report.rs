use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One row of evaluation output. Metrics that were not requested stay `None`
/// and are written as empty CSV cells.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub label: String,
    pub mse_bar: Option<f64>,
    pub mse_pairs: Option<usize>,
    pub ess_min: Option<f64>,
    pub ess_min_series: Option<String>,
    pub ess_per_hour: Option<f64>,
    pub hellinger: Option<f64>,
    pub hellinger_bins: Option<usize>,
    pub timing_secs: Option<f64>,
}

const COLUMNS: [&str; 9] = [
    "label",
    "mse_bar",
    "mse_pairs",
    "ess_min",
    "ess_min_series",
    "ess_per_hour",
    "hellinger",
    "hellinger_bins",
    "timing_secs",
];

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl MetricReport {
    pub fn validate(&self) -> Result<()> {
        if let Some(h) = self.hellinger {
            if !(0.0..=1.0).contains(&h) {
                return Err(Error::validation(format!("hellinger {h} outside [0, 1]")));
            }
        }
        if let Some(m) = self.mse_bar {
            if !(m >= 0.0) {
                return Err(Error::validation(format!("mse_bar {m} is negative")));
            }
        }
        if let Some(e) = self.ess_min {
            if !(e > 0.0) {
                return Err(Error::validation(format!("ess_min {e} is not positive")));
            }
        }
        Ok(())
    }

    pub fn csv_header() -> String {
        COLUMNS.join(",")
    }

    pub fn csv_row(&self) -> String {
        [
            self.label.clone(),
            cell(&self.mse_bar),
            cell(&self.mse_pairs),
            cell(&self.ess_min),
            cell(&self.ess_min_series),
            cell(&self.ess_per_hour),
            cell(&self.hellinger),
            cell(&self.hellinger_bins),
            cell(&self.timing_secs),
        ]
        .join(",")
    }

    pub fn write_csv<W: Write>(reports: &[MetricReport], mut out: W) -> Result<()> {
        writeln!(out, "{}", Self::csv_header())?;
        for r in reports {
            writeln!(out, "{}", r.csv_row())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_one_cell_per_column() {
        let r = MetricReport { label: "run".into(), mse_bar: Some(0.5), hellinger: Some(0.1), ..Default::default() };
        assert_eq!(r.csv_row().split(',').count(), COLUMNS.len());
        let mut buf = Vec::new();
        MetricReport::write_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("label,mse_bar"));
        assert!(text.contains("run,0.5,,,,,0.1,,"));
    }

    #[test]
    fn hellinger_range_checked() {
        let r = MetricReport { hellinger: Some(1.5), ..Default::default() };
        assert!(r.validate().is_err());
    }
}
