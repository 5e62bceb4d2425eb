//! CSV time series.

use rayon::prelude::*;

use super::config::{OutputKind, Scenario};
use super::CliError;
use crate::error::Error;
use crate::evolution::{mandel_q, moments_at, quadrature_variances};
use crate::fock_oracle::{integrate_grid, moments_from_rho, prepare};
use crate::nonclassicality::tau_m_raw;
use crate::states::MomentTable;

pub const HEADER: [&str; 9] =
    ["gamma_t", "re_mean_a", "im_mean_a", "n_mean", "mandel_q", "var_x", "var_y", "tau_m_raw", "tau_m"];

/// Extra columns appended when the oracle runs.
pub const ORACLE_HEADER: [&str; 6] =
    ["oracle_re_mean_a", "oracle_im_mean_a", "oracle_n_mean", "oracle_mandel_q", "oracle_var_x", "oracle_var_y"];

pub const NA: &str = "NA";

/// 17 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn q_cell(q: Result<f64, Error>) -> Result<String, CliError> {
    match q {
        Ok(v) => Ok(num(v)),
        Err(Error::DegenerateDenominator) => Ok(NA.into()),
        Err(e) => Err(e.into()),
    }
}

fn analytic_cells(sc: &Scenario, gamma_t: f64) -> Result<Vec<String>, CliError> {
    let t = gamma_t / sc.reservoir.gamma();
    let (state, res) = (&sc.state, &sc.reservoir);
    let na = || NA.to_string();
    let mut cells = vec![num(gamma_t)];
    if sc.wants(OutputKind::Moments) {
        let m = moments_at(state, res, t)?;
        cells.extend([num(m.mean_a().re), num(m.mean_a().im), num(m.mean_n())]);
    } else {
        cells.extend([na(), na(), na()]);
    }
    cells.push(if sc.wants(OutputKind::MandelQ) { q_cell(mandel_q(state, res, t))? } else { na() });
    if sc.wants(OutputKind::Variances) {
        let (vx, vy) = quadrature_variances(state, res, t)?;
        cells.extend([num(vx), num(vy)]);
    } else {
        cells.extend([na(), na()]);
    }
    if sc.wants(OutputKind::TauM) {
        let raw = tau_m_raw(state, res, t)?;
        cells.extend([num(raw), num(raw.max(0.0))]);
    } else {
        cells.extend([na(), na()]);
    }
    Ok(cells)
}

fn oracle_cells(m: &MomentTable) -> Result<Vec<String>, CliError> {
    let (vx, vy) = m.quadrature_variances();
    Ok(vec![num(m.mean_a().re), num(m.mean_a().im), num(m.mean_n()), q_cell(m.mandel_q())?, num(vx), num(vy)])
}

/// Oracle moments along the scenario's time grid.
pub fn oracle_series(sc: &Scenario) -> Result<Vec<MomentTable>, CliError> {
    let rho0 = prepare(&sc.state, sc.oracle_dim())?;
    let times: Vec<f64> = sc.grid.points().iter().map(|gt| gt / sc.reservoir.gamma()).collect();
    let states = integrate_grid(&rho0, &sc.reservoir, &times, sc.oracle_dt())?;
    Ok(states.iter().map(moments_from_rho).collect())
}

/// The whole CSV document, header included.
pub fn evolve_csv(sc: &Scenario, parallel: bool) -> Result<String, CliError> {
    let grid = sc.grid.points();
    let rows: Vec<Vec<String>> = if parallel {
        grid.par_iter().map(|&gt| analytic_cells(sc, gt)).collect::<Result<_, _>>()?
    } else {
        grid.iter().map(|&gt| analytic_cells(sc, gt)).collect::<Result<_, _>>()?
    };
    let mut header: Vec<&str> = HEADER.to_vec();
    let mut rows = rows;
    if sc.oracle.enabled {
        header.extend(ORACLE_HEADER);
        for (row, m) in rows.iter_mut().zip(oracle_series(sc)?) {
            row.extend(oracle_cells(&m)?);
        }
    }
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}
