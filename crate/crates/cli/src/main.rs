use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use noon_sim::{ConfigFile, Error};

mod output;
mod verify;

use output::{RunManifest, SweepRow};

/// Simulate coherent absorption of two-photon N00N states in a lossy beamsplitter.
#[derive(Debug, Parser)]
#[command(name = "noon-sim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct ConfigArg {
    /// TOML configuration; missing keys take the measured-setup defaults.
    #[arg(long, env = "NOON_SIM_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the interferometer phase and write one row per phase.
    Sweep {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, allow_hyphen_values = true)]
        phase_start: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        phase_stop: Option<f64>,
        /// Number of phases; the stop value is excluded.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        steps: Option<u32>,
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check channel completeness, oracle agreement, bounds and fringe form.
    Verify {
        #[command(flatten)]
        config: ConfigArg,
    },
    /// N-photon absorption for N00N versus independent photons.
    Enhancement {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(1..=7))]
        n_max: u32,
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 invariant violation.
enum Failure {
    Verify(Vec<String>),
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHermitian(_) | Error::InvalidState(_) | Error::Incomplete { .. } | Error::NotIsometry(_) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(config: &ConfigArg) -> Result<ConfigFile, Failure> {
    match &config.config {
        Some(path) => Ok(ConfigFile::load(path)?),
        None => Ok(ConfigFile::default()),
    }
}

fn sweep(
    config: &ConfigArg,
    phase_start: Option<f64>,
    phase_stop: Option<f64>,
    steps: Option<u32>,
    output: &Path,
    format: Format,
) -> Result<(), Failure> {
    let mut file = load(config)?;
    file.phase_start = phase_start.unwrap_or(file.phase_start);
    file.phase_stop = phase_stop.unwrap_or(file.phase_stop);
    file.phase_steps = steps.map_or(file.phase_steps, |s| s as usize);
    let cfg = file.to_experiment()?;

    let records = noon_sim::sweep_phase(&cfg)?;
    let rows: Vec<SweepRow> = records.iter().map(SweepRow::from).collect();
    if let Some(bad) = rows.iter().find(|r| !r.is_finite()) {
        return Err(Failure::Internal(format!("non-finite output at phi = {}", bad.phi)));
    }
    let bytes = match format {
        Format::Csv => output::sweep_csv(&rows).map_err(|e| e.to_string()),
        Format::Json => output::sweep_json(&rows).map_err(|e| e.to_string()),
    }
    .map_err(Failure::Internal)?;
    output::write_with_manifest(output, &bytes, RunManifest::new("sweep", config.config.as_deref(), &file))
        .map_err(|e| Failure::Input(e.to_string()))
}

fn verify(config: &ConfigArg) -> Result<(), Failure> {
    let file = load(config)?;
    let cfg = file.to_experiment()?;
    let report = verify::run(&cfg, file.lbs_alpha_reported)?;
    report.print();
    let failures = report.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(failures))
    }
}

fn enhancement(config: &ConfigArg, n_max: u32, output: &Path) -> Result<(), Failure> {
    let file = load(config)?;
    let cfg = file.to_experiment()?;
    let mut rows = Vec::new();
    for (panel, lbs) in [("config", cfg.lbs), ("ideal", noon_sim::LbsParams::ideal_cpa())] {
        for n in 1..=n_max {
            rows.push((panel, noon_sim::noon_absorption(n, lbs)?));
        }
    }
    let bytes = output::enhancement_csv(&rows).map_err(|e| Failure::Internal(e.to_string()))?;
    output::write_with_manifest(output, &bytes, RunManifest::new("enhancement", config.config.as_deref(), &file))
        .map_err(|e| Failure::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep { config, phase_start, phase_stop, steps, output, format } => {
            sweep(config, *phase_start, *phase_stop, *steps, output, *format)
        }
        Command::Verify { config } => verify(config),
        Command::Enhancement { config, n_max, output } => enhancement(config, *n_max, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(failed)) => {
            eprintln!("verification failed: {}", failed.join(", "));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
