use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(sobolev_cli::run(sobolev_cli::Cli::parse()))
}
