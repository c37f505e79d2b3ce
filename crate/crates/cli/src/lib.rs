//! Command-line front end: single-state reports, overlap sweeps, dephasing
//! trajectories and randomized cross-checks, emitted as text, CSV or JSON.

use std::process::ExitCode;

pub mod args;
pub mod evolve;
pub mod output;
pub mod report;
pub mod sweep;
pub mod verify;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Violated precondition on the inputs.
    Invalid(catcorr::Error),
    Io(std::io::Error),
}

impl From<catcorr::Error> for CliError {
    fn from(e: catcorr::Error) -> Self {
        CliError::Invalid(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Runs a parsed command. Exit code 2 marks invalid input, 1 a failed
/// verification or an I/O error.
pub fn run(cli: &Cli) -> ExitCode {
    let result = match &cli.command {
        Command::Report(a) => report::run(a).map(|_| true),
        Command::Sweep(a) => sweep::run(a).map(|_| true),
        Command::Evolve(a) => evolve::run(a).map(|_| true),
        Command::Verify(a) => verify::run(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        // a closed downstream pipe (`| head`) is not a failure
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
