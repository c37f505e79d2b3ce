use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    catcorr_cli::run(&catcorr_cli::args::Cli::parse())
}
