mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ik_core::scalar::mp::set_default_digits;

use commands::Command;
use config::{Backend, ConfigError, RunConfig, Settings};

const EXIT_CONFIG: u8 = 2;
const EXIT_CHECK: u8 = 3;
const EXIT_RUNTIME: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "ikcheck", version, about = "Build and verify the A2(2) R-matrix, L-operators and spin chain")]
struct Cli {
    /// Flat JSON file with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

fn resolve(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let file = match &cli.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let merged = file.overridden_by(cli.settings.clone());
    let allowed = cli.command.backends();
    let cfg = RunConfig::resolve(merged, allowed[0])?;
    if !allowed.contains(&cfg.backend) {
        return Err(ConfigError(format!("{} does not support the {} backend", cli.command.name(), cfg.backend)));
    }
    if matches!(cli.command, Command::Export { .. }) && cfg.output.is_none() {
        return Err(ConfigError("export needs --output".into()));
    }
    if cfg.backend == Backend::Numeric {
        set_default_digits(cfg.precision).map_err(|e| ConfigError(e.to_string()))?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let report = match cli.command.run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    let mut out = std::io::stdout().lock();
    if report.print(&mut out).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(EXIT_RUNTIME);
    }
    if let Some(path) = &cfg.output {
        let text = serde_json::to_string_pretty(&report.to_json()).expect("JSON value serializes");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_RUNTIME);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK)
    }
}
