mod args;
mod commands;
mod config;
mod error;
mod io;
mod output;

use clap::Parser;

use args::{Cli, Command};

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("SBMDS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() {
    let raw: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let expanded = match config::expand(raw) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    };
    let cli = Cli::parse_from(expanded);
    configure_threads();
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate::run(&a),
        Command::Fit(a) => commands::fit::run(&a),
        Command::Evaluate(a) => commands::evaluate::run(&a),
        Command::Bench(a) => commands::bench::run(&a),
        Command::Align(a) => commands::align::run(&a),
        Command::Loglik(a) => commands::loglik::run(&a),
        Command::Experiment(a) => commands::experiment::run(&a),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
