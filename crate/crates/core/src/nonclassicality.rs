//! Nonclassical depth `τ_m(t)`.
//!
//! `τ_m` is the smallest `τ ≥ 0` for which the smoothed P-function
//! `R(z, τ) = exp(τ/4 Δ) P(z)` is a regular, non-negative function. For the
//! catalogued states it has closed forms in `N_t`, `M_t` and `e^{−2Γt}`; a
//! negative closed-form value means the state is classical and `τ_m = 0`.

use num_complex::Complex64;

use crate::error::{check_time, Error, Result};
use crate::evolution::evolved_descriptor;
use crate::reservoir::ReservoirParams;
use crate::states::{PDescriptor, StateSpec};

/// Values below this count as negative in grid scans.
pub const NEGATIVITY_THRESHOLD: f64 = -1e-12;

/// Bisection tolerance on `Γt` for transition times.
pub const TRANSITION_TOL: f64 = 1e-10;

/// Upper end of the transition-time search, in units of `Γt`.
pub const TRANSITION_HORIZON: f64 = 50.0;

/// Nonclassical depth of one state in one reservoir as a function of time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauProfile {
    pub state: StateSpec,
    pub res: ReservoirParams,
}

impl TauProfile {
    pub fn new(state: StateSpec, res: ReservoirParams) -> Result<Self> {
        state.validate()?;
        Ok(Self { state, res })
    }

    /// Unclamped closed-form depth; negative values mean "classical".
    pub fn raw(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        let res = &self.res;
        let nt = res.nt(t)?;
        let mt = res.mt(t)?;
        let e2 = (-2.0 * res.gamma() * t).exp();
        let value = match self.state {
            StateSpec::Coherent { .. } => mt.abs() - nt,
            StateSpec::Thermal { nbar } => mt.abs() - (nt + nbar * e2),
            StateSpec::SqueezedCoherent { mu, .. } => {
                let s = (2.0 * mu).exp();
                let along_r = -(nt + mt - (s - 1.0) * e2 / (2.0 * s));
                let along_i = -(nt - mt + (s - 1.0) * e2 / 2.0);
                along_r.max(along_i)
            }
            StateSpec::PhotonAddedCoherent { .. } | StateSpec::Cat { .. } => {
                let h = e2 / 2.0;
                h + (h * h + mt * mt).sqrt() - nt
            }
            StateSpec::PhotonAddedThermal { nbar } => {
                let h = (nbar + 1.0) * e2 / 2.0;
                h + (h * h + mt * mt).sqrt() - (nt + nbar * e2)
            }
        };
        Ok(value)
    }

    /// `max(raw, 0)`
    pub fn clamped(&self, t: f64) -> Result<f64> {
        Ok(self.raw(t)?.max(0.0))
    }

    fn nonclassical(&self, t: f64) -> Result<bool> {
        Ok(self.raw(t)? > 0.0)
    }
}

/// Closed-form nonclassical depth at time `t`, clamped at zero.
pub fn tau_m(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<f64> {
    TauProfile::new(*state, *res)?.clamped(t)
}

/// Unclamped closed-form depth.
pub fn tau_m_raw(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<f64> {
    TauProfile::new(*state, *res)?.raw(t)
}

/// Depth of a Gaussian state from its smallest quadrature variance.
pub fn gaussian_tau_from_covariance(vmin: f64) -> f64 {
    (0.5 - 2.0 * vmin).max(0.0)
}

/// Outcome of a transition-time search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transition {
    /// The closed-form depth changes sign at this (physical) time.
    Crossing(f64),
    /// Classical at `t = 0` and nonclassical for every `t > 0`.
    Immediate,
    /// No sign change within the search horizon.
    Never,
}

impl Transition {
    pub fn crossing(self) -> Option<f64> {
        match self {
            Transition::Crossing(t) => Some(t),
            _ => None,
        }
    }
}

fn bisect(mut lo: f64, mut hi: f64, tol: f64, mut flag: impl FnMut(f64) -> Result<bool>) -> Result<f64> {
    let flag_lo = flag(lo)?;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if flag(mid)? == flag_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First time the closed-form depth changes sign.
///
/// Brackets on a log-spaced grid of `Γt ∈ [1e-9, 50]`, then bisects to
/// `1e-10` in `Γt`.
pub fn transition_time(state: &StateSpec, res: &ReservoirParams) -> Result<Transition> {
    let profile = TauProfile::new(*state, *res)?;
    let gamma = res.gamma();
    let tol = TRANSITION_TOL / gamma;
    const POINTS: usize = 4000;
    let (lo_exp, hi_exp) = (-9.0f64, TRANSITION_HORIZON.log10());
    let grid = (0..POINTS).map(|i| {
        let x = lo_exp + (hi_exp - lo_exp) * i as f64 / (POINTS - 1) as f64;
        10f64.powf(x) / gamma
    });

    let at_zero = profile.nonclassical(0.0)?;
    let mut prev_t = 0.0;
    let mut prev = at_zero;
    let mut became_nonclassical_at_start = false;
    for (i, t) in grid.enumerate() {
        let now = profile.nonclassical(t)?;
        if now != prev {
            let zero_at_origin = i == 0 && !at_zero && profile.raw(0.0)? == 0.0;
            if zero_at_origin {
                // τ vanishes at t = 0 and is positive right after: no real crossing
                became_nonclassical_at_start = true;
            } else {
                let root = bisect(prev_t, t, tol, |x| profile.nonclassical(x))?;
                return Ok(Transition::Crossing(root));
            }
        }
        prev_t = t;
        prev = now;
    }
    Ok(if became_nonclassical_at_start { Transition::Immediate } else { Transition::Never })
}

/// Transition time from solving the closed-form depth algebraically, where
/// that is possible. Independent of [`transition_time`].
pub fn closed_form_transition(state: &StateSpec, res: &ReservoirParams) -> Result<Option<f64>> {
    state.validate()?;
    let (n, m) = (res.big_n(), res.big_m());
    // roots are found in e = e^{−2Γt}; valid crossings have 0 < e < 1
    let to_time = |e: f64| -> Option<f64> { (e > 0.0 && e < 1.0).then(|| -0.5 * e.ln() / res.gamma()) };
    let root = match *state {
        StateSpec::Coherent { .. } => None,
        StateSpec::Thermal { nbar } => {
            let excess = m.abs() - n;
            if excess > 0.0 && nbar > 0.0 {
                to_time(excess / (excess + nbar))
            } else {
                None
            }
        }
        StateSpec::SqueezedCoherent { mu, .. } => {
            let s = (2.0 * mu).exp();
            let kr = (s - 1.0) / (2.0 * s);
            let ki = (s - 1.0) / 2.0;
            // each branch is linear in e: −(N ± M) + [(N ± M) ± k] e
            let candidates = [((n + m), (n + m) + kr), ((n - m), (n - m) - ki)];
            let profile = TauProfile::new(*state, *res)?;
            let mut best: Option<f64> = None;
            for (c0, c1) in candidates {
                if c1 == 0.0 {
                    continue;
                }
                if let Some(t) = to_time(c0 / c1) {
                    // keep only roots of the branch that is the active maximum
                    if profile.raw(t)?.abs() < 1e-9 {
                        best = Some(best.map_or(t, |b: f64| b.min(t)));
                    }
                }
            }
            best
        }
        StateSpec::PhotonAddedCoherent { .. } | StateSpec::Cat { .. } => {
            // (1 − e)[(M² − N²)(1 − e) + N e] = 0
            let denom = n * n + n - m * m;
            if denom != 0.0 {
                let e = (n * n - m * m) / denom;
                to_time(e).filter(|_| n * (1.0 - e) - e / 2.0 >= 0.0)
            } else {
                None
            }
        }
        StateSpec::PhotonAddedThermal { nbar } => {
            let k = (nbar + 1.0) / 2.0;
            let d = nbar - n;
            let qa = d * d - 2.0 * k * d - m * m;
            let qb = 2.0 * n * d - 2.0 * k * n + 2.0 * m * m;
            let qc = n * n - m * m;
            let mut roots = Vec::new();
            if qa.abs() < 1e-15 {
                if qb != 0.0 {
                    roots.push(-qc / qb);
                }
            } else {
                let disc = qb * qb - 4.0 * qa * qc;
                if disc >= 0.0 {
                    let sq = disc.sqrt();
                    roots.push((-qb + sq) / (2.0 * qa));
                    roots.push((-qb - sq) / (2.0 * qa));
                }
            }
            roots.into_iter().filter(|&e| (n + d * e) - k * e >= 0.0).filter_map(to_time).reduce(f64::min)
        }
    };
    Ok(root)
}

/// `R(z, τ)` of the evolved state, evaluated in closed form.
///
/// Cat states are rejected: their interference term is not evaluated.
pub fn r_function(state: &StateSpec, res: &ReservoirParams, t: f64, tau: f64, z: Complex64) -> Result<f64> {
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::InvalidParameter { name: "tau", reason: format!("must be non-negative, got {tau}") });
    }
    evolved_descriptor(state, res, t)?.smoothed_value(z, tau)
}

/// Square grid of phase-space points used to look for negativity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZGrid {
    pub center: Complex64,
    pub half_width: f64,
    pub step: f64,
}

impl ZGrid {
    /// Half-width `5 + |center|`, step `0.05`, centered on the descriptor's first term.
    pub fn for_descriptor(desc: &PDescriptor) -> Self {
        let center = desc.terms.first().map_or(Complex64::new(0.0, 0.0), |t| t.center);
        Self { center, half_width: 5.0 + desc.max_center_norm(), step: 0.05 }
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let n = (self.half_width / self.step).floor() as i64;
        (-n..=n).flat_map(move |i| {
            (-n..=n).map(move |j| self.center + Complex64::new(i as f64 * self.step, j as f64 * self.step))
        })
    }
}

/// Minimum of `R(z, τ)` over the grid.
pub fn min_on_grid(desc: &PDescriptor, tau: f64, grid: &ZGrid) -> Result<f64> {
    let mut min = f64::INFINITY;
    for z in grid.points() {
        min = min.min(desc.smoothed_value(z, tau)?);
    }
    Ok(min)
}

/// `true` when `τ = 0` already gives a regular, non-negative function.
///
/// Scalar deltas count as classical even though they are not pointwise defined.
pub fn is_classical(desc: &PDescriptor) -> Result<bool> {
    if desc.interference.is_some() {
        return Err(Error::UnsupportedState("cat"));
    }
    if desc.regularization_threshold() > 0.0 {
        return Ok(false);
    }
    let singular = desc.terms.iter().any(|t| t.smooth_r <= 0.0 || t.smooth_i <= 0.0);
    if singular {
        return Ok(desc.terms.iter().all(|t| t.prefactor.is_scalar() && t.prefactor.constant >= 0.0));
    }
    Ok(min_on_grid(desc, 0.0, &ZGrid::for_descriptor(desc))? >= NEGATIVITY_THRESHOLD)
}

/// Nonclassical depth found numerically: bisection on `τ` for the onset of
/// non-negativity of the closed-form `R(z, τ)` on a phase-space grid.
pub fn numeric_depth(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<f64> {
    let desc = evolved_descriptor(state, res, t)?;
    numeric_depth_of(&desc)
}

pub fn numeric_depth_of(desc: &PDescriptor) -> Result<f64> {
    if is_classical(desc)? {
        return Ok(0.0);
    }
    let grid = ZGrid::for_descriptor(desc);
    let lo = desc.regularization_threshold();
    let nonneg = |tau: f64| -> Result<bool> { Ok(min_on_grid(desc, tau, &grid)? >= NEGATIVITY_THRESHOLD) };
    let start = lo + 1e-9;
    if nonneg(start)? {
        return Ok(lo);
    }
    let mut hi = lo.max(0.0) + 1.0;
    while !nonneg(hi)? {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::InvalidParameter { name: "tau", reason: "no non-negative smoothing found".into() });
        }
    }
    bisect(start, hi, 1e-9, nonneg)
}

/// Time at which the closed-form `R(z, 0)` first becomes non-negative on the
/// grid (or stops being so), scanning `Γt` in steps of `scan_step` up to
/// `horizon` and refining by bisection.
pub fn numeric_transition(
    state: &StateSpec,
    res: &ReservoirParams,
    scan_step: f64,
    horizon: f64,
) -> Result<Option<f64>> {
    let classical = |gt: f64| -> Result<bool> { is_classical(&evolved_descriptor(state, res, gt / res.gamma())?) };
    let mut prev_t = scan_step;
    let mut prev = classical(prev_t)?;
    let steps = (horizon / scan_step).ceil() as usize;
    for i in 2..=steps {
        let gt = i as f64 * scan_step;
        let now = classical(gt)?;
        if now != prev {
            let root = bisect(prev_t, gt, 1e-7, classical)?;
            return Ok(Some(root / res.gamma()));
        }
        prev_t = gt;
        prev = now;
    }
    Ok(None)
}
