pub mod align;
pub mod bench;
pub mod evaluate;
pub mod experiment;
pub mod fit;
pub mod loglik;
pub mod simulate;

use std::io::Write;

use sbmds::dissim::write_matrix_csv;

use crate::error::CliResult;

pub(crate) fn matrix_writer(values: &[f64], cols: usize) -> impl FnOnce(&mut dyn Write) -> CliResult<()> + '_ {
    move |w| Ok(write_matrix_csv(w, values, cols)?)
}

pub(crate) fn execution(serial: bool) -> sbmds::Execution {
    if serial {
        sbmds::Execution::Serial
    } else {
        sbmds::Execution::default()
    }
}
