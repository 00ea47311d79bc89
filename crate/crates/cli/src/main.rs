use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qtherm_cli::{run, Cli, CliError, SweepConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qtherm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = SweepConfig::from_cli(cli)?;
    let text = run(&cli.command, &cfg)?;
    match &cli.sweep.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
