//! Core data types and truncated-normal numerics.

pub(crate) mod config;
mod csv;
mod matrix;
pub mod normal;
mod scheme;
mod tnorm;

pub use config::{euclidean_distance, LatentConfig};
pub use csv::{read_matrix_csv, write_matrix_csv, CsvOptions};
pub use matrix::DissimMatrix;
pub use normal::{log_std_normal_cdf, std_normal_cdf, std_normal_pdf};
pub use scheme::{suggested_band_count, CouplingScheme};
pub use tnorm::{sample_truncated_normal, truncated_normal_logpdf, TruncatedNormalParams};
