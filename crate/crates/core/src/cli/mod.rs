//! Command-line experiment runner.

pub mod config;
pub mod run;
pub mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use config::{parse_config, ConfigError, Engine, RunConfig};
pub use run::{execute, write_csv, ExperimentResult};
pub use selftest::{selftest, Check};

use crate::codes::canonical_basis;
use crate::error::Error;
use crate::protocol::ProtocolTemplate;
use crate::analytic::has_closed_form;
use crate::noise::NoiseKind;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
const EXIT_IO: u8 = 1;

#[derive(Debug, Parser)]
#[command(name = "purify-qec", version, about = "Single-auxiliary purification experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the sweep described by a config file and write its CSV.
    Run {
        config: PathBuf,
        /// Overrides the `out` key.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a config file without computing anything.
    Validate { config: PathBuf },
    /// Print the available codes and their energy spectra.
    ListCodes,
    /// Check channel and evolution invariants on small instances.
    Selftest,
}

fn load(path: &Path) -> Result<RunConfig, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_CONFIG)
    })?;
    parse_config(&text).map_err(|errors| {
        for e in &errors {
            eprintln!("config error: {e}");
        }
        ExitCode::from(EXIT_CONFIG)
    })
}

fn failure(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Io(_) => ExitCode::from(EXIT_IO),
        _ => ExitCode::from(EXIT_NUMERIC),
    }
}

fn run(path: &Path, out: Option<PathBuf>) -> ExitCode {
    let config = match load(path) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let Some(out) = out.or_else(|| config.out.clone()) else {
        eprintln!("config error: out: missing (set it in the config or pass --out)");
        return ExitCode::from(EXIT_CONFIG);
    };
    let result = match execute(&config) {
        Ok(r) => r,
        Err(e) => return failure(&e),
    };
    if let Err(e) = write_csv(&result, &out) {
        return failure(&e);
    }
    eprintln!(
        "wrote {} rows to {} in {:.2?}",
        result.rows.len(),
        out.display(),
        result.wall_time
    );
    ExitCode::SUCCESS
}

fn list_codes() -> ExitCode {
    for name in config::CODE_NAMES {
        let code = config::parse_code(name).expect("listed codes parse");
        let basis = match canonical_basis(&code, ProtocolTemplate::new(code.clone(), NoiseKind::BitFlip).basis_variant()) {
            Ok(b) => b,
            Err(e) => return failure(&e),
        };
        let spectrum: Vec<String> = basis
            .energies()
            .iter()
            .zip(basis.degeneracies())
            .map(|(e, d)| format!("({e}, {d})"))
            .collect();
        let analytic: Vec<String> = NoiseKind::ALL
            .iter()
            .filter(|n| has_closed_form(&code, **n))
            .map(ToString::to_string)
            .collect();
        println!(
            "{name:12} qubits={} spectrum=[{}] closed_forms=[{}]",
            code.n_qubits,
            spectrum.join(", "),
            analytic.join(", ")
        );
    }
    ExitCode::SUCCESS
}

fn run_selftest() -> ExitCode {
    match selftest() {
        Ok(checks) => {
            for c in &checks {
                println!("{c}");
            }
            if checks.iter().all(Check::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_NUMERIC)
            }
        }
        Err(e) => failure(&e),
    }
}

pub fn main_with(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Run { config, out } => run(&config, out),
        Command::Validate { config } => match load(&config) {
            Ok(c) => {
                println!("ok: {} under {}", c.code, c.noise);
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::ListCodes => list_codes(),
        Command::Selftest => run_selftest(),
    }
}
