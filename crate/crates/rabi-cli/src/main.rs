//! `rabi`: eigenspectra, Wigner functions, and entanglement entropy of the
//! quantum Rabi model family in a truncated Fock space.
//!
//! Exit codes: 0 success, 1 computation or output failure, 2 usage error.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod config;
mod csv_out;
mod run;
mod svg;

fn main() -> ExitCode {
    let cli = match config::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 2,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(run::CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(run::CliError::Failed(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
