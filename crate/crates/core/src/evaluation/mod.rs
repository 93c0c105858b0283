//! Data simulation, classical MDS, Procrustes alignment and diagnostics.

mod cmds;
mod ess;
pub mod experiments;
mod hellinger;
mod mse;
mod procrustes;
mod report;
mod simulate;

pub use cmds::{classical_mds, classical_mds_with, EigenMethod};
pub use ess::{ess, min_ess, min_ess_per_hour, per_hour, MonitoredSeries};
pub use experiments::{consistency_experiment, ConsistencyConfig, ConsistencyRow, CouplingRule};
pub use hellinger::{hellinger, hellinger_with_bins, HELLINGER_BINS};
pub use mse::{config_mse, mean_mse, mean_mse_pairs, sample_pairs};
pub use procrustes::{align_trace, procrustes, procrustes_align, Alignment, Summary};
pub use report::MetricReport;
pub use simulate::{simulate_dataset, simulate_dataset_with, NoiseKind, SimSpec, SimulatedData};
