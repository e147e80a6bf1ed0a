//! Scenario runner CLI.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

use clap::{Parser, Subcommand};
use radkin::harness::run_scenario;
use radkin::scenario::Scenario;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "radkin",
    version,
    about = "Radiating-electron kinetic theory scenario runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario configuration.
    Run {
        /// Path to the TOML configuration file.
        config: PathBuf,
        /// Output directory (default: ./runs/<scenario-name>).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override configuration values, e.g. --override params.amplitude=1e-4.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Run a dispersion sweep (the configuration must be a
    /// dispersion-scan scenario).
    Scan {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Validate a configuration file and report all problems.
    Validate { config: PathBuf },
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn load(config: &PathBuf, overrides: &[String]) -> Result<Scenario, u8> {
    let text = match std::fs::read_to_string(config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config.display());
            return Err(EXIT_CONFIG);
        }
    };
    match Scenario::from_toml_with_overrides(&text, overrides) {
        Ok(s) => Ok(s),
        Err(errors) => {
            eprintln!("configuration errors in {}:", config.display());
            for e in errors {
                eprintln!("  - {e}");
            }
            Err(EXIT_CONFIG)
        }
    }
}

fn execute(scenario: &Scenario, out: Option<PathBuf>) -> u8 {
    let out_dir = out.unwrap_or_else(|| PathBuf::from("runs").join(scenario.name()));
    match run_scenario(scenario, &out_dir) {
        Ok(summary) => {
            println!("{}", summary.headline);
            println!("artifacts in {}", summary.out_dir.display());
            0
        }
        Err(e) => {
            eprintln!("error running scenario `{}`: {e}", scenario.name());
            EXIT_NUMERICAL
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            config,
            out,
            overrides,
        } => match load(&config, &overrides) {
            Ok(s) => execute(&s, out),
            Err(code) => code,
        },
        Command::Scan {
            config,
            out,
            overrides,
        } => match load(&config, &overrides) {
            Ok(s @ Scenario::DispersionScan(_)) => execute(&s, out),
            Ok(other) => {
                eprintln!(
                    "error: `radkin scan` requires a dispersion-scan configuration, got `{}`",
                    other.name()
                );
                EXIT_CONFIG
            }
            Err(code) => code,
        },
        Command::Validate { config } => match load(&config, &[]) {
            Ok(s) => {
                println!("ok: valid `{}` scenario", s.name());
                0
            }
            Err(code) => code,
        },
    };
    ExitCode::from(code)
}
