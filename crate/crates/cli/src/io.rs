use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use sbmds::dissim::{read_matrix_csv, CsvOptions};
use sbmds::samplers::Trace;
use sbmds::{CouplingScheme, DissimMatrix, LatentConfig};

use crate::error::{CliError, CliResult};

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| CliError::io(path, e))
}

pub fn read_dissim(path: &Path, skip_header: bool) -> CliResult<DissimMatrix> {
    let rows = read_matrix_csv(open(path)?, CsvOptions { skip_header })?;
    Ok(DissimMatrix::from_rows(&rows)?)
}

pub fn read_locations(path: &Path, skip_header: bool) -> CliResult<LatentConfig> {
    let rows = read_matrix_csv(open(path)?, CsvOptions { skip_header })?;
    Ok(LatentConfig::from_rows(&rows)?)
}

pub fn read_trace(path: &Path) -> CliResult<Trace> {
    Ok(Trace::read_csv(open(path)?)?)
}

/// Wall time recorded in the `trace_meta.json` next to a trace, if any.
pub fn sidecar_wall_seconds(trace: &Path) -> Option<f64> {
    let meta = trace.with_file_name("trace_meta.json");
    let text = std::fs::read_to_string(meta).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    v.get("wall_seconds")?.as_f64()
}

/// Parses a coupling flag; `auto` becomes `banded:ceil(D sqrt(N))`.
pub fn parse_coupling(spec: &str, n_objects: usize, dim: usize) -> CliResult<CouplingScheme> {
    let scheme = if spec.trim() == "auto" {
        CouplingScheme::Banded(sbmds::dissim::suggested_band_count(n_objects, dim))
    } else {
        spec.parse::<CouplingScheme>()
            .map_err(|e| CliError::usage(format!("--coupling: {e}")))?
    };
    scheme.validate(n_objects).map_err(|e| CliError::usage(e.to_string()))?;
    Ok(scheme)
}
