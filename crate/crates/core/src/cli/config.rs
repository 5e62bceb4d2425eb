//! JSON run configuration.
//!
//! ```json
//! {
//!   "state": { "kind": "photon_added_thermal", "nbar": 1.0 },
//!   "reservoir": { "n": 2.0, "m": 1.0 },
//!   "gamma": 1.0,
//!   "time_grid": { "start": 0.0, "stop": 2.0, "step": 0.01 },
//!   "outputs": ["moments", "mandel_q", "variances", "tau_m"],
//!   "oracle": { "enabled": false, "dim": 128, "dt": 0.001 }
//! }
//! ```
//!
//! The reservoir is given either as raw `{"n", "m"}` or physically as
//! `{"nbar0", "r", "theta"}` with `theta` in radians (0 or π). Times in
//! `time_grid` are in units of `Γt`.

use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::fock_oracle::{default_dt, DEFAULT_DIM};
use crate::reservoir::{PhysicalReservoirSpec, ReservoirParams, SqueezePhase};
use crate::states::StateSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Moments,
    MandelQ,
    Variances,
    TauM,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self { start: 0.0, stop: 2.0, step: 0.01 }
    }
}

impl TimeGrid {
    pub fn validate(&self) -> Result<(), CliError> {
        let ok = self.start.is_finite() && self.stop.is_finite() && self.step.is_finite();
        if !ok || self.start < 0.0 || self.step <= 0.0 || self.stop <= self.start {
            return Err(CliError::Config(format!(
                "time_grid: need start >= 0, step > 0 and stop > start, got start = {}, stop = {}, step = {}",
                self.start, self.stop, self.step
            )));
        }
        Ok(())
    }

    /// Grid points in `Γt`, including `stop` when it lies on the grid.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    #[serde(default)]
    pub enabled: bool,
    pub dim: Option<usize>,
    /// RK4 step in units of `1/Γ`.
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReservoirConfig {
    pub n: Option<f64>,
    pub m: Option<f64>,
    pub nbar0: Option<f64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
}

impl ReservoirConfig {
    pub fn resolve(&self, gamma: f64) -> Result<ReservoirParams, CliError> {
        let raw = self.n.is_some() || self.m.is_some();
        let physical = self.nbar0.is_some() || self.r.is_some() || self.theta.is_some();
        let params = match (raw, physical) {
            (true, false) => {
                let (Some(n), Some(m)) = (self.n, self.m) else {
                    return Err(CliError::Config("reservoir: raw form needs both `n` and `m`".into()));
                };
                ReservoirParams::new(gamma, n, m)
            }
            (false, true) => {
                let (Some(nbar0), Some(r)) = (self.nbar0, self.r) else {
                    return Err(CliError::Config("reservoir: physical form needs `nbar0` and `r`".into()));
                };
                let theta = SqueezePhase::from_radians(self.theta.unwrap_or(0.0))
                    .map_err(|e| CliError::Config(format!("reservoir.theta: {e}")))?;
                ReservoirParams::from_physical(PhysicalReservoirSpec { nbar0, r, theta }, gamma)
            }
            _ => {
                return Err(CliError::Config(
                    "reservoir: give either {n, m} or {nbar0, r, theta}, not both or neither".into(),
                ))
            }
        };
        params.map_err(|e| CliError::Config(format!("reservoir: {e}")))
    }
}

fn default_gamma() -> f64 {
    1.0
}

fn all_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Moments, OutputKind::MandelQ, OutputKind::Variances, OutputKind::TauM]
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub state: StateSpec,
    pub reservoir: ReservoirConfig,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub time_grid: TimeGrid,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub oracle: OracleConfig,
}

/// A parsed configuration with its reservoir resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub state: StateSpec,
    pub reservoir: ReservoirParams,
    pub grid: TimeGrid,
    pub outputs: Vec<OutputKind>,
    pub oracle: OracleConfig,
}

impl Scenario {
    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }

    pub fn oracle_dim(&self) -> usize {
        self.oracle.dim.unwrap_or(DEFAULT_DIM)
    }

    /// RK4 step in physical time; see [`default_dt`].
    pub fn oracle_dt(&self) -> f64 {
        match self.oracle.dt {
            Some(dt) => dt / self.reservoir.gamma(),
            None => default_dt(&self.reservoir, self.oracle_dim()),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Validates every field and resolves the reservoir.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        self.state.validate().map_err(|e| CliError::Config(format!("state: {e}")))?;
        let reservoir = self.reservoir.resolve(self.gamma)?;
        self.time_grid.validate()?;
        if let Some(dim) = self.oracle.dim {
            if dim < 2 {
                return Err(CliError::Config(format!("oracle.dim: need at least 2 levels, got {dim}")));
            }
        }
        if let Some(dt) = self.oracle.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(CliError::Config(format!("oracle.dt: must be positive, got {dt}")));
            }
        }
        Ok(Scenario {
            state: self.state,
            reservoir,
            grid: self.time_grid,
            outputs: self.outputs.clone(),
            oracle: self.oracle,
        })
    }
}
