use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct CsvOptions {
    /// Skip the first line.
    pub skip_header: bool,
}

/// Reads a comma-separated numeric matrix, one row per line.
pub fn read_matrix_csv<R: BufRead>(reader: R, opts: CsvOptions) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(opts.skip_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 1 + usize::from(opts.skip_header);
        let rec = rec.map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let row = rec
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field.parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("column {}: `{field}` is not a number", j + 1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Writes `rows x cols` values (row-major) with shortest round-trip formatting.
pub fn write_matrix_csv<W: Write>(mut out: W, values: &[f64], cols: usize) -> Result<()> {
    for row in values.chunks(cols) {
        let mut first = true;
        for v in row {
            if !first {
                out.write_all(b",")?;
            }
            write!(out, "{v}")?;
            first = false;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}
