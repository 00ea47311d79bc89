//! Command-line sweeps over probe states, bath temperatures and copy counts,
//! emitted as CSV or JSON tables.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use config::{Cli, Command, Format, SweepConfig};
pub use error::CliError;
pub use output::{Cell, ParsedTable, Table};

/// Builds the table for `cfg` and renders it in the requested format.
pub fn run(command: &Command, cfg: &SweepConfig) -> Result<String, CliError> {
    let table = match *command {
        Command::Trajectory => commands::trajectory(cfg)?,
        Command::PeCurve => commands::pe_curve(cfg)?,
        Command::Multiqubit => commands::multiqubit(cfg)?,
        Command::Distinguishability => commands::distinguishability_curve(cfg)?,
        Command::Adaptive => commands::adaptive(cfg)?,
        Command::Waveplates { p, gamma } => commands::waveplates(p, gamma)?,
    };
    match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(&cfg.echo()),
    }
}
