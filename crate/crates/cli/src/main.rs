use std::process::ExitCode;

use clap::Parser;
use frechet_edit::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match frechet_edit::commands::run(&cli) {
        Ok(feasible) => ExitCode::from(if feasible { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
