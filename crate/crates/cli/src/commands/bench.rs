
use sbmds::evaluation::{simulate_dataset, NoiseKind, SimSpec};
use sbmds::likelihood::eval_timer_with;

use super::execution;
use crate::args::BenchArgs;
use crate::error::{CliError, CliResult};
use crate::io::parse_coupling;
use crate::output::OutDir;

pub fn run(args: &BenchArgs) -> CliResult<()> {
    if args.reps < 3 {
        return Err(CliError::usage("--reps must be at least 3"));
    }
    let mut rows = Vec::new();
    for &n in &args.n_list {
        let data = simulate_dataset(&SimSpec {
            n_objects: n,
            true_dim: args.dim,
            sigma_true: 0.2,
            noise_kind: NoiseKind::TruncatedNormal,
            seed: args.seed,
        })?;
        for spec in &args.coupling_list {
            let spec = spec.replace("n-1", &(n - 1).to_string());
            let scheme = match parse_coupling(&spec, n, args.dim) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("skipping {spec} at n={n}: {e}");
                    continue;
                }
            };
            let t = eval_timer_with(
                execution(args.serial),
                &data.observed,
                &data.locations,
                0.04,
                scheme,
                args.reps,
            )?;
            eprintln!("n={n} {scheme}: likelihood {:.3e}s gradient {:.3e}s", t.likelihood_secs, t.gradient_secs);
            rows.push((n, scheme, "likelihood", t.likelihood_secs));
            rows.push((n, scheme, "gradient", t.gradient_secs));
        }
    }
    let mut out = OutDir::prepare(&args.out.out_dir, args.out.force, "bench")?;
    out.write("timings.csv", |w| {
        let io = |e| CliError::io(std::path::Path::new("timings.csv"), e);
        writeln!(w, "n,scheme,op,seconds_median").map_err(io)?;
        for (n, scheme, op, secs) in &rows {
            writeln!(w, "{n},{scheme},{op},{secs}").map_err(io)?;
        }
        Ok(())
    })?;
    out.finish(args, Some(args.seed))
}
