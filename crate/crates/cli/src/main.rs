mod args;
mod commands;
mod output;

use args::{Cli, Command};
use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum => "spectrum",
        Command::Modes { .. } => "modes",
        Command::Classify => "classify",
        Command::Invariance { .. } => "invariance",
        Command::MapU { .. } => "map-u",
        Command::Flux { .. } => "flux",
        Command::NegativeModes => "negative-modes",
        Command::FockCheck { .. } => "fock-check",
        Command::Rayleigh { .. } => "rayleigh",
        Command::Table1 => "table1",
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let threads = cli.common.threads.unwrap_or(1).max(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("thread pool: {e}"))?;
    let cfg = cli.common.run_config()?;
    let name = command_name(&cli.command);
    let report = commands::run(&cli.command, &cli.common, &cfg)?;
    output::emit(name, &cfg, &report)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(report.warnings.is_empty())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
