//! Command-line front end: `evolve`, `transition-time`, `figures`, `validate`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical or tolerance
//! failure, 4 I/O error.

pub mod config;
pub mod evolve;
pub mod figures;
pub mod transition;
pub mod validate;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
pub use config::{OutputKind, RunConfig, Scenario, TimeGrid};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("tolerance failure: {0}")]
    Tolerance(String),
    #[error("I/O error on {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), message: err.to_string() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) | CliError::Tolerance(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. }
            | Error::NegativeTime(_)
            | Error::ConstraintViolated { .. }
            | Error::ComplexSqueezing(_)
            | Error::UnsupportedState(_)
            | Error::DimensionMismatch { .. } => CliError::Config(e.to_string()),
            Error::DegenerateDenominator
            | Error::SingularSmoothing { .. }
            | Error::TruncationTooSmall { .. }
            | Error::TraceDriftExceeded { .. }
            | Error::SeriesDiverges(_) => CliError::Numerical(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sqbath", version, about = "Cavity field in a squeezed thermal reservoir")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of moments, Mandel Q, variances and nonclassical depth as CSV.
    Evolve(RunArgs),
    /// First time the nonclassical depth changes sign.
    TransitionTime(RunArgs),
    /// Write figure1.svg and figure2.svg into the output directory.
    Figures {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compare the analytical results with the Fock-space integrator.
    Validate(RunArgs),
}

#[derive(Debug, Clone, Args, Default)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also run the Fock-space integrator.
    #[arg(long)]
    pub oracle: bool,
    /// Fock truncation dimension.
    #[arg(long)]
    pub dim: Option<usize>,
    /// RK4 step in units of 1/Γ.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Evaluate grid points in parallel (output order is unchanged).
    #[arg(long)]
    pub parallel: bool,
}

impl RunArgs {
    /// Loads the config and applies the command-line overrides.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let path = self.config.as_deref().ok_or_else(|| CliError::Config("--config PATH is required".into()))?;
        let mut cfg = RunConfig::load(path)?;
        self.apply_overrides(&mut cfg);
        cfg.scenario()
    }

    pub fn apply_overrides(&self, cfg: &mut RunConfig) {
        if self.oracle {
            cfg.oracle.enabled = true;
        }
        if self.dim.is_some() {
            cfg.oracle.dim = self.dim;
        }
        if self.dt.is_some() {
            cfg.oracle.dt = self.dt;
        }
    }
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

/// Runs one parsed command, writing reports to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Evolve(args) => {
            let scenario = args.scenario()?;
            let csv = evolve::evolve_csv(&scenario, args.parallel)?;
            write_output(args.out.as_deref(), &csv, stdout)
        }
        Command::TransitionTime(args) => {
            let scenario = args.scenario()?;
            let report = transition::report(&scenario)?;
            write_output(args.out.as_deref(), &report.text, stdout)?;
            report.check()
        }
        Command::Figures { out } => {
            for path in figures::write_figures(out)? {
                writeln!(stdout, "wrote {}", path.display()).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            }
            Ok(())
        }
        Command::Validate(args) => {
            let scenarios = match &args.config {
                Some(_) => vec![args.scenario()?],
                None => validate::default_suite(args)?,
            };
            let report = validate::run_suite(&scenarios, args.parallel)?;
            write_output(args.out.as_deref(), &report.text, stdout)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Tolerance("validation suite reported FAIL".into()))
            }
        }
    }
}

/// `x` in fixed notation with `digits` significant digits.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
