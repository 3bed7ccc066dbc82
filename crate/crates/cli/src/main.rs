use std::process::ExitCode;

use clap::Parser;
use robin_square_cli::args::Cli;
use robin_square_cli::commands::{dispatch, exit_code};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
