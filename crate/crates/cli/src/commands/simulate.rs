use sbmds::evaluation::{classical_mds, simulate_dataset, NoiseKind, SimSpec};

use super::matrix_writer;
use crate::args::{Noise, SimulateArgs};
use crate::error::{CliError, CliResult};
use crate::output::OutDir;

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    if args.n < 2 || args.true_dim < 1 {
        return Err(CliError::usage("--n must be at least 2 and --true-dim at least 1"));
    }
    let spec = SimSpec {
        n_objects: args.n,
        true_dim: args.true_dim,
        sigma_true: args.sigma_true,
        noise_kind: match args.noise {
            Noise::Tnorm => NoiseKind::TruncatedNormal,
            Noise::Lognormal => NoiseKind::LogNormal,
        },
        seed: args.seed,
    };
    let data = simulate_dataset(&spec)?;
    let mut out = OutDir::prepare(&args.out.out_dir, args.out.force, "simulate")?;
    let n = args.n;
    out.write("true_locations.csv", matrix_writer(data.locations.as_slice(), args.true_dim))?;
    out.write("true_distances.csv", matrix_writer(data.true_distances.as_slice(), n))?;
    out.write("observed_distances.csv", matrix_writer(data.observed.as_slice(), n))?;
    if let Some(d) = args.embed_dim {
        let x = classical_mds(&data.observed, d)?;
        out.write("cmds_locations.csv", matrix_writer(x.as_slice(), d))?;
    }
    out.finish(args, Some(args.seed))
}
