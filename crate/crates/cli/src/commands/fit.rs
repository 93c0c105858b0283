use rand::seq::SliceRandom;
use serde::Serialize;

use sbmds::rng;
use sbmds::samplers::{run_chain_with, Algorithm, Init, PriorSpec, SamplerConfig, Trace, TraceMeta};
use sbmds::CouplingScheme;

use super::execution;
use crate::args::{FitArgs, InitKind, Sampler};
use crate::error::{CliError, CliResult};
use crate::io::{parse_coupling, read_dissim, read_locations};
use crate::output::OutDir;

const LARGE_TRACE_CELLS: u64 = 100_000_000;

#[derive(Serialize)]
struct FitMeta<'a> {
    #[serde(flatten)]
    meta: &'a TraceMeta,
    coupling_requested: &'a str,
    /// `permutation[i]` is the input row fitted as object `i`.
    permutation: Option<&'a [usize]>,
}

/// Maps snapshots back to the input order.
fn unpermute(trace: &mut Trace, perm: &[usize]) {
    let d = trace.dim;
    for s in &mut trace.samples {
        let mut x = vec![0.0; s.x.len()];
        for (i, &orig) in perm.iter().enumerate() {
            x[orig * d..(orig + 1) * d].copy_from_slice(&s.x[i * d..(i + 1) * d]);
        }
        s.x = x;
    }
}

pub fn run(args: &FitArgs) -> CliResult<()> {
    let delta = read_dissim(&args.dissim, args.skip_header)?;
    let n = delta.n_objects();
    let dim = args.embed_dim;
    if dim == 0 {
        return Err(CliError::usage("--embed-dim must be positive"));
    }
    let scheme: CouplingScheme = parse_coupling(&args.coupling, n, dim)?;
    let algorithm = match args.sampler {
        Sampler::Mh => Algorithm::Mh,
        Sampler::Hmc => Algorithm::Hmc,
    };
    let mut config = SamplerConfig::new(algorithm, args.iterations, args.burnin, args.thin, args.seed);
    config.leapfrog_steps = args.leapfrog_steps;
    if let Some(v) = args.initial_step {
        config.initial_step = v;
    }
    if let Some(v) = args.target_accept {
        config.target_accept = v;
    }
    config.initial_sigma2 = args.initial_sigma2;
    config.adapt = !args.no_adapt;
    config.validate().map_err(|e| CliError::usage(e.to_string()))?;

    let perm: Option<Vec<usize>> = args.permute_rows.map(|s| {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng::from_seed(s));
        p
    });
    let fitted_delta = match &perm {
        Some(p) => delta.permuted(p)?,
        None => delta,
    };
    let init = match (&args.initial_locations, args.init) {
        (Some(path), _) => {
            let x = read_locations(path, false)?;
            if x.n_objects() != n || x.dim() != dim {
                return Err(CliError::Core(sbmds::Error::Validation(format!(
                    "initial locations are {}x{}, expected {n}x{dim}",
                    x.n_objects(),
                    x.dim()
                ))));
            }
            match &perm {
                Some(p) => {
                    let rows: Vec<Vec<f64>> = p.iter().map(|&orig| x.row(orig).to_vec()).collect();
                    Init::Given(sbmds::LatentConfig::from_rows(&rows)?)
                }
                None => Init::Given(x),
            }
        }
        (None, InitKind::Cmds) => Init::ClassicalMds,
        (None, InitKind::Random) => Init::Random,
    };

    let cells = config.retained() * (n * dim + 2) as u64;
    if cells > LARGE_TRACE_CELLS {
        eprintln!("warning: trace will hold {cells} values");
    }
    let mut out = OutDir::prepare(&args.out.out_dir, args.out.force, "fit")?;
    out.record_input(&args.dissim)?;
    if let Some(p) = &args.initial_locations {
        out.record_input(p)?;
    }
    let priors = PriorSpec::standard(dim);
    let mut trace = run_chain_with(execution(args.serial), &fitted_delta, scheme, &priors, &config, dim, init)?;
    if let Some(p) = &perm {
        unpermute(&mut trace, p);
    }
    let meta = trace.meta.clone().expect("chains record metadata");
    out.write("trace.csv", |w| Ok(trace.write_csv(w)?))?;
    out.write_json(
        "trace_meta.json",
        &FitMeta { meta: &meta, coupling_requested: &args.coupling, permutation: perm.as_deref() },
    )?;
    eprintln!(
        "acceptance: locations {:.3}, sigma2 {:.3} (post burn-in); {} samples in {:.1}s",
        meta.acceptance.location_rate_post_burn_in,
        meta.acceptance.sigma2_rate_post_burn_in,
        trace.len(),
        meta.wall_seconds
    );
    out.finish(args, Some(args.seed))
}
