use std::io::{ErrorKind, Write};
use std::path::Path;

use serde::Serialize;

use sbmds::{grad_log_likelihood, log_likelihood};

use crate::args::LoglikArgs;
use crate::error::{CliError, CliResult};
use crate::io::{parse_coupling, read_dissim, read_locations};

#[derive(Serialize)]
struct Output {
    coupling: String,
    log_likelihood: f64,
    gradient: Vec<Vec<f64>>,
}

pub fn run(args: &LoglikArgs) -> CliResult<()> {
    let delta = read_dissim(&args.dissim, args.skip_header)?;
    let x = read_locations(&args.locations, args.skip_header)?;
    let scheme = parse_coupling(&args.coupling, delta.n_objects(), x.dim())?;
    let ll = log_likelihood(&delta, &x, args.sigma2, scheme)?;
    let g = grad_log_likelihood(&delta, &x, args.sigma2, scheme)?;
    let out = Output {
        coupling: scheme.to_string(),
        log_likelihood: ll,
        gradient: (0..g.n_objects()).map(|n| g.row(n).to_vec()).collect(),
    };
    let mut stdout = std::io::stdout().lock();
    let written = serde_json::to_writer_pretty(&mut stdout, &out)
        .map_err(std::io::Error::from)
        .and_then(|()| stdout.write_all(b"\n"));
    match written {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::io(Path::new("<stdout>"), e)),
        _ => Ok(()),
    }
}
