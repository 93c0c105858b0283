use sbmds::evaluation::{hellinger, mean_mse, min_ess, per_hour, MetricReport, MonitoredSeries, HELLINGER_BINS};
use sbmds::rng;

use crate::args::{EvaluateArgs, Metric};
use crate::error::{CliError, CliResult};
use crate::io::{read_dissim, read_trace, sidecar_wall_seconds};
use crate::output::OutDir;

pub fn run(args: &EvaluateArgs) -> CliResult<()> {
    let wants = |m: Metric| args.metrics.contains(&m);
    if wants(Metric::Mse) && args.truth_distances.is_none() {
        return Err(CliError::usage("metric `mse` needs --truth-distances"));
    }
    if wants(Metric::Hellinger) && args.compare_trace.is_none() {
        return Err(CliError::usage("metric `hellinger` needs --compare-trace"));
    }
    let trace = read_trace(&args.trace)?;
    let wall = sidecar_wall_seconds(&args.trace);
    let mut report = MetricReport { label: args.trace.display().to_string(), ..Default::default() };

    if let Some(path) = args.truth_distances.as_ref().filter(|_| wants(Metric::Mse)) {
        let truth = read_dissim(path, false)?;
        let mut r = rng::from_seed(args.seed);
        report.mse_bar = Some(mean_mse(&trace, &truth, args.max_pairs, &mut r)?);
        report.mse_pairs = Some((truth.n_pairs()).min(args.max_pairs));
    }
    if wants(Metric::Ess) {
        let monitored = if args.monitor.is_empty() {
            MonitoredSeries::All
        } else {
            MonitoredSeries::Columns(args.monitor.clone())
        };
        let (e, series) = min_ess(&trace, &monitored)?;
        report.ess_min = Some(e);
        report.ess_min_series = Some(series);
        if let Some(secs) = wall {
            report.ess_per_hour = Some(per_hour(e, secs)?);
        }
    }
    if let Some(path) = args.compare_trace.as_ref().filter(|_| wants(Metric::Hellinger)) {
        let other = read_trace(path)?;
        report.hellinger = Some(hellinger(&trace.column(&args.column)?, &other.column(&args.column)?)?);
        report.hellinger_bins = Some(HELLINGER_BINS);
    }
    if wants(Metric::Timing) {
        report.timing_secs = Some(wall.ok_or_else(|| CliError::usage("metric `timing` needs trace_meta.json next to the trace"))?);
    }
    report.validate()?;

    let mut out = OutDir::prepare(&args.out.out_dir, args.out.force, "evaluate")?;
    out.record_input(&args.trace)?;
    for p in [&args.truth_distances, &args.compare_trace].into_iter().flatten() {
        out.record_input(p)?;
    }
    out.write("metrics.csv", |w| Ok(MetricReport::write_csv(std::slice::from_ref(&report), w)?))?;
    out.write_json("metrics.json", &report)?;
    out.finish(args, Some(args.seed))
}
