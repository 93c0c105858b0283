use std::path::Path;

use sbmds::evaluation::{align_trace, Summary};

use super::matrix_writer;
use crate::args::{AlignArgs, SummaryKind};
use crate::error::{CliError, CliResult};
use crate::io::{read_locations, read_trace};
use crate::output::OutDir;

pub fn run(args: &AlignArgs) -> CliResult<()> {
    let trace = read_trace(&args.trace)?;
    if trace.is_empty() {
        return Err(CliError::Core(sbmds::Error::Validation("trace has no samples".into())));
    }
    let reference_file = (args.reference != "first-sample").then(|| Path::new(&args.reference));
    let reference = match reference_file {
        Some(path) => read_locations(path, false)?,
        None => trace.snapshot(0)?,
    };
    let summary = match args.summary {
        SummaryKind::Mean => Summary::Mean,
        SummaryKind::Median => Summary::Median,
    };
    let aligned = align_trace(&trace, &reference, summary)?;
    let mut out = OutDir::prepare(&args.out.out_dir, args.out.force, "align")?;
    out.record_input(&args.trace)?;
    if let Some(p) = reference_file {
        out.record_input(p)?;
    }
    out.write("aligned.csv", matrix_writer(aligned.as_slice(), aligned.dim()))?;
    out.finish(args, None)
}
