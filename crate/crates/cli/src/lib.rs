//! Command-line front end for `congruence-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;
pub mod trace;

use args::{Cli, Command};
use commands::Outcome;
use error::CliError;

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Count(a) => commands::count(a),
        Command::Series(a) => commands::series(a),
        Command::Verify(a) => commands::verify(a),
        Command::Asympt(a) => commands::asympt(a),
        Command::Scan(a) => commands::scan(a),
        Command::Diagonal(a) => commands::diagonal(a),
    }
}
