//! Command-line front end for the `qiota` library: evaluation, fixed
//! points, the Φ/Ψ correspondence and verification sweeps.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod record;
pub mod sweeps;
pub mod table;

use std::time::Instant;

pub use args::Cli;
pub use commands::Output;
pub use error::{CliError, CliResult};

/// Runs a parsed command line, timing it into the record.
pub fn run(cli: &Cli) -> CliResult<Output> {
    let start = Instant::now();
    let mut out = commands::execute(&cli.command)?;
    if !cli.no_timing {
        out.record.elapsed_us = Some(start.elapsed().as_micros() as u64);
    }
    Ok(out)
}
