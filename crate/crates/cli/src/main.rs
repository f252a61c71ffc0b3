//! `kuniform`: closed forms, constructions, exhaustive oracles and verification
//! suites from the command line.
//!
//! Exit codes: 0 success, 1 a checked invariant failed, 2 bad arguments,
//! 3 enumeration budget exceeded.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Outcome of a subcommand that ran to completion.
pub enum Status {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
