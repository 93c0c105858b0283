
use sbmds::evaluation::experiments::{
    dimension_cells, efficiency_cells, elbow_cells, run_cells, write_results_csv, RunSettings,
};
use sbmds::evaluation::{consistency_experiment, ConsistencyConfig, CouplingRule, NoiseKind};
use sbmds::samplers::{Algorithm, SamplerConfig};
use sbmds::CouplingScheme;

use crate::args::{ExperimentArgs, Preset, Sampler};
use crate::error::{CliError, CliResult};
use crate::output::OutDir;

pub fn run(args: &ExperimentArgs) -> CliResult<()> {
    let algorithm = match args.sampler {
        Sampler::Mh => Algorithm::Mh,
        Sampler::Hmc => Algorithm::Hmc,
    };
    let mut sampler = SamplerConfig::new(algorithm, args.iterations, args.burnin, args.thin, 0);
    sampler.leapfrog_steps = args.leapfrog_steps;
    sampler.validate().map_err(|e| CliError::usage(e.to_string()))?;
    let mut out = OutDir::prepare(&args.out.out_dir, args.out.force, "experiment")?;

    if args.preset == Preset::Consistency {
        let cfg = ConsistencyConfig {
            n_list: args.n_list.clone(),
            seeds: args.seeds.clone(),
            sigma_true: args.sigma_true,
            rule: CouplingRule::LandmarksSqrt(args.landmark_factor),
            sampler,
            parallel_cells: !args.serial,
        };
        let rows = consistency_experiment(&cfg)?;
        out.write("consistency.csv", |w| {
            let io = |e| CliError::io(std::path::Path::new("consistency.csv"), e);
            writeln!(w, "n_objects,seed,scheme,max_error").map_err(io)?;
            for r in &rows {
                writeln!(w, "{},{},{},{}", r.n_objects, r.seed, r.scheme, r.max_error).map_err(io)?;
            }
            Ok(())
        })?;
        out.write_json("consistency.json", &rows)?;
        return out.finish(args, None);
    }

    let cells = match args.preset {
        Preset::Elbow => elbow_cells(args.n, args.sigma_true, &args.bands, &args.seeds, NoiseKind::TruncatedNormal),
        Preset::Lognormal => elbow_cells(args.n, args.sigma_true, &args.bands, &args.seeds, NoiseKind::LogNormal),
        Preset::Dimension => dimension_cells(args.n, args.sigma_true, &args.true_dims, &args.bands, &args.seeds),
        Preset::Efficiency => {
            let schemes = args
                .coupling_list
                .iter()
                .map(|s| s.parse::<CouplingScheme>().map_err(|e| CliError::usage(format!("--coupling-list: {e}"))))
                .collect::<CliResult<Vec<_>>>()?;
            let seed = args.seeds.first().copied().unwrap_or(0);
            efficiency_cells(&args.n_list, &schemes, args.sigma_true, seed)
        }
        Preset::Consistency => unreachable!(),
    };
    let mut settings = RunSettings::new(sampler);
    settings.max_pairs = args.max_pairs;
    settings.parallel_cells = !args.serial;
    let results = run_cells(&cells, &settings)?;
    out.write("results.csv", |w| Ok(write_results_csv(&results, w)?))?;
    out.write_json("results.json", &results)?;
    out.finish(args, None)
}
