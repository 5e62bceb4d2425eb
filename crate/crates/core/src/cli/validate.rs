//! Analytical-versus-oracle comparison suite.

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::{OracleConfig, OutputKind, Scenario, TimeGrid};
use super::evolve::oracle_series;
use super::{significant, CliError, RunArgs};
use crate::evolution::{mandel_q, moments_at, quadrature_variances};
use crate::nonclassicality::{closed_form_transition, gaussian_tau_from_covariance, tau_m, transition_time};
use crate::reservoir::ReservoirParams;
use crate::states::StateSpec;

/// Relative tolerance, with an absolute floor, for oracle agreement.
pub const REL_TOL: f64 = 1e-6;
pub const ABS_FLOOR: f64 = 1e-9;

/// Tolerance on the Gaussian depth recovered from oracle variances.
pub const GAUSSIAN_TAU_TOL: f64 = 1e-6;

/// Tolerance on numeric versus algebraic transition times, in `Γt`.
pub const TRANSITION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub name: &'static str,
    pub max_abs: f64,
    pub max_rel: f64,
    pub passed: bool,
}

#[derive(Debug, Default)]
struct Tracker {
    max_abs: f64,
    max_rel: f64,
    passed: bool,
}

impl Tracker {
    fn new() -> Self {
        Self { passed: true, ..Default::default() }
    }

    fn push(&mut self, analytic: Complex64, oracle: Complex64) {
        let d = (analytic - oracle).norm();
        let scale = analytic.norm();
        self.max_abs = self.max_abs.max(d);
        self.max_rel = self.max_rel.max(d / scale.max(ABS_FLOOR));
        if d > (REL_TOL * scale).max(ABS_FLOOR) {
            self.passed = false;
        }
    }

    fn finish(self, name: &'static str) -> Deviation {
        Deviation { name, max_abs: self.max_abs, max_rel: self.max_rel, passed: self.passed }
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Oracle-versus-analytics deviations over the scenario grid.
pub fn compare(sc: &Scenario) -> Result<Vec<Deviation>, CliError> {
    let oracle = oracle_series(sc)?;
    let names = ["mean_a", "mean_a2", "n_mean", "mean_ad2_a2", "mandel_q", "var_x", "var_y"];
    let mut trackers: Vec<Tracker> = names.iter().map(|_| Tracker::new()).collect();
    let mut gauss = Tracker::new();
    for (gt, om) in sc.grid.points().into_iter().zip(&oracle) {
        let t = gt / sc.reservoir.gamma();
        let am = moments_at(&sc.state, &sc.reservoir, t)?;
        let (vx, vy) = quadrature_variances(&sc.state, &sc.reservoir, t)?;
        let (ox, oy) = om.quadrature_variances();
        trackers[0].push(am.mean_a(), om.mean_a());
        trackers[1].push(am.mean_a2(), om.mean_a2());
        trackers[2].push(real(am.mean_n()), real(om.mean_n()));
        trackers[3].push(real(am.mean_ad2_a2()), real(om.mean_ad2_a2()));
        if let (Ok(aq), Ok(oq)) = (mandel_q(&sc.state, &sc.reservoir, t), om.mandel_q()) {
            trackers[4].push(real(aq), real(oq));
        }
        trackers[5].push(real(vx), real(ox));
        trackers[6].push(real(vy), real(oy));
        if sc.state.is_gaussian() {
            let table = tau_m(&sc.state, &sc.reservoir, t)?;
            let d = (gaussian_tau_from_covariance(ox.min(oy)) - table).abs();
            gauss.max_abs = gauss.max_abs.max(d);
            gauss.max_rel = gauss.max_rel.max(d / table.abs().max(ABS_FLOOR));
            gauss.passed &= d <= GAUSSIAN_TAU_TOL;
        }
    }
    let mut out: Vec<Deviation> = trackers.into_iter().zip(names).map(|(t, n)| t.finish(n)).collect();
    if sc.state.is_gaussian() {
        out.push(gauss.finish("gaussian_tau_m"));
    }
    Ok(out)
}

/// The four reference scenarios: thermal in the ideally squeezed bath, and
/// squeezed-coherent, photon-added coherent and photon-added thermal states
/// in the `N = 2, M = 1` bath.
pub fn reference_scenarios() -> Result<Vec<(StateSpec, ReservoirParams)>, CliError> {
    let ideal = ReservoirParams::new(1.0, 1.0, -(2f64.sqrt()))?;
    let warm = ReservoirParams::new(1.0, 2.0, 1.0)?;
    Ok(vec![
        (StateSpec::thermal(1.0), ideal),
        (StateSpec::squeezed_coherent(1.0, 0.0, 1.0), warm),
        (StateSpec::photon_added_coherent(1.0, 0.0), warm),
        (StateSpec::photon_added_thermal(1.0), warm),
    ])
}

pub fn default_suite(args: &RunArgs) -> Result<Vec<Scenario>, CliError> {
    if let Some(dt) = args.dt {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(CliError::Config(format!("--dt must be positive, got {dt}")));
        }
    }
    if matches!(args.dim, Some(d) if d < 2) {
        return Err(CliError::Config("--dim needs at least 2 levels".into()));
    }
    Ok(reference_scenarios()?
        .into_iter()
        .map(|(state, reservoir)| Scenario {
            state,
            reservoir,
            grid: TimeGrid { start: 0.0, stop: 2.0, step: 0.1 },
            outputs: vec![OutputKind::Moments, OutputKind::MandelQ, OutputKind::Variances, OutputKind::TauM],
            oracle: OracleConfig { enabled: true, dim: args.dim, dt: args.dt },
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub text: String,
    pub passed: bool,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn scenario_block(sc: &Scenario) -> Result<(String, bool), CliError> {
    let mut text = format!(
        "scenario {} N={} M={} dim={} dt={}\n",
        sc.state.kind(),
        sc.reservoir.big_n(),
        sc.reservoir.big_m(),
        sc.oracle_dim(),
        sc.oracle_dt()
    );
    let mut ok = true;
    for d in compare(sc)? {
        ok &= d.passed;
        text.push_str(&format!(
            "  {:<15} max_abs {:.3e}  max_rel {:.3e}  {}\n",
            d.name,
            d.max_abs,
            d.max_rel,
            verdict(d.passed)
        ));
    }
    let gamma = sc.reservoir.gamma();
    let numeric = transition_time(&sc.state, &sc.reservoir)?.crossing().map(|t| t * gamma);
    let closed = closed_form_transition(&sc.state, &sc.reservoir)?.map(|t| t * gamma);
    match (numeric, closed) {
        (Some(a), Some(b)) => {
            let pass = (a - b).abs() <= TRANSITION_TOL;
            ok &= pass;
            text.push_str(&format!(
                "  transition      numeric {}  closed {}  diff {:.3e}  {}\n",
                significant(a, 10),
                significant(b, 10),
                (a - b).abs(),
                verdict(pass)
            ));
        }
        (None, None) => {}
        (a, b) => {
            ok = false;
            text.push_str(&format!("  transition      numeric {a:?}  closed {b:?}  FAIL\n"));
        }
    }
    Ok((text, ok))
}

pub fn run_suite(scenarios: &[Scenario], parallel: bool) -> Result<SuiteReport, CliError> {
    let blocks: Vec<(String, bool)> = if parallel {
        scenarios.par_iter().map(scenario_block).collect::<Result<_, _>>()?
    } else {
        scenarios.iter().map(scenario_block).collect::<Result<_, _>>()?
    };
    let passed = blocks.iter().all(|(_, ok)| *ok);
    let mut text: String = blocks.into_iter().map(|(t, _)| t).collect();
    text.push_str(&format!("overall {}\n", verdict(passed)));
    Ok(SuiteReport { text, passed })
}
