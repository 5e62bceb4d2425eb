//! Truncated Fock-space master-equation integrator.
//!
//! Works on dense `dim × dim` density matrices with the ladder operators
//! truncated to the same basis. The dissipator is applied elementwise, the
//! state is stepped with classical RK4, re-symmetrized after every step, and
//! the trace is monitored but never renormalized.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_time, Error, Result};
use crate::reservoir::ReservoirParams;
use crate::states::{MomentTable, StateSpec, MAX_ORDER};

/// Truncation used when none is given.
pub const DEFAULT_DIM: usize = 128;

/// Largest allowed `|tr ρ − 1|` during integration.
pub const TRACE_DRIFT_LIMIT: f64 = 1e-6;

/// Largest allowed population in the top tenth of the Fock levels.
pub const LEAKAGE_LIMIT: f64 = 1e-12;

/// Default RK4 step: `1e-3 / Γ`, shortened when the truncated generator is
/// stiff enough to make that step unstable.
pub fn default_dt(res: &ReservoirParams, dim: usize) -> f64 {
    1e-3f64.min(0.5 / ((2.0 * res.big_n() + 1.0 + 2.0 * res.big_m().abs()) * dim as f64)) / res.gamma()
}

type CMat = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    data: CMat,
    /// Population lost to truncation when the state was prepared.
    leakage: f64,
}

impl DensityMatrix {
    pub fn from_matrix(data: CMat) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::DimensionMismatch { expected: data.nrows(), found: data.ncols() });
        }
        Ok(Self { data, leakage: 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &CMat {
        &self.data
    }

    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    /// Largest `|ρ_{mn} − ρ*_{nm}|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for m in 0..d {
            for n in 0..=m {
                worst = worst.max((self.data[(m, n)] - self.data[(n, m)].conj()).norm());
            }
        }
        worst
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|n| self.data[(n, n)].re).collect()
    }

    fn hermitize(&mut self) {
        let d = self.dim();
        for m in 0..d {
            for n in 0..m {
                let avg = 0.5 * (self.data[(m, n)] + self.data[(n, m)].conj());
                self.data[(m, n)] = avg;
                self.data[(n, m)] = avg.conj();
            }
            self.data[(m, m)].im = 0.0;
        }
    }
}

/// Fock amplitudes of `|γ⟩` up to level `dim − 1`.
fn coherent_amplitudes(gamma: Complex64, dim: usize) -> Vec<Complex64> {
    let mut psi = Vec::with_capacity(dim);
    psi.push(Complex64::new((-0.5 * gamma.norm_sqr()).exp(), 0.0));
    for n in 1..dim {
        let prev = psi[n - 1];
        psi.push(prev * gamma / (n as f64).sqrt());
    }
    psi
}

/// Eigenvector of `cosh μ · a + sinh μ · a†` with eigenvalue `γ cosh μ + γ* sinh μ`,
/// i.e. the squeezed state with `⟨a⟩ = γ` and `V_X = e^{−2μ}/4`.
fn squeezed_amplitudes(gamma: Complex64, mu: f64, dim: usize) -> Vec<Complex64> {
    let (ch, sh) = (mu.cosh(), mu.sinh());
    let beta = gamma * ch + gamma.conj() * sh;
    let psi0 = (-0.5 * gamma.norm_sqr() - 0.5 * gamma.conj() * gamma.conj() * mu.tanh()).exp() / ch.sqrt();
    let mut psi = vec![psi0];
    for n in 0..dim.saturating_sub(1) {
        let prev = if n == 0 { ZERO } else { psi[n - 1] };
        let next = (beta * psi[n] - sh * (n as f64).sqrt() * prev) / (ch * ((n + 1) as f64).sqrt());
        psi.push(next);
    }
    psi
}

fn top_tenth_start(dim: usize) -> usize {
    dim - dim.div_ceil(10)
}

/// Rejects the truncation when the top tenth of the levels plus everything
/// beyond carries too much population, otherwise renormalizes.
fn guarded(weights: &[f64], beyond: f64, dim: usize) -> Result<f64> {
    let top: f64 = weights[top_tenth_start(dim)..].iter().sum();
    let leakage = top + beyond.max(0.0);
    if leakage.is_nan() || leakage >= LEAKAGE_LIMIT {
        return Err(Error::TruncationTooSmall { dim, leakage });
    }
    Ok(leakage)
}

fn pure(psi: &[Complex64], dim: usize) -> Result<DensityMatrix> {
    let weights: Vec<f64> = psi.iter().map(|c| c.norm_sqr()).collect();
    let kept: f64 = weights.iter().sum();
    let leakage = guarded(&weights, 1.0 - kept, dim)?;
    let v = nalgebra::DVector::from_iterator(dim, psi.iter().map(|c| c / kept.sqrt()));
    Ok(DensityMatrix { data: &v * v.adjoint(), leakage })
}

fn diagonal(weights: Vec<f64>, dim: usize) -> Result<DensityMatrix> {
    let kept: f64 = weights.iter().sum();
    let leakage = guarded(&weights, 1.0 - kept, dim)?;
    let data = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        weights.iter().map(|w| Complex64::new(w / kept, 0.0)),
    ));
    Ok(DensityMatrix { data, leakage })
}

/// Catalogue state projected onto the first `dim` Fock levels.
pub fn prepare(state: &StateSpec, dim: usize) -> Result<DensityMatrix> {
    state.validate()?;
    if dim < 2 {
        return Err(Error::InvalidParameter { name: "dim", reason: format!("need at least 2 levels, got {dim}") });
    }
    match *state {
        StateSpec::Coherent { amplitude } => pure(&coherent_amplitudes(amplitude, dim), dim),
        StateSpec::SqueezedCoherent { amplitude, mu } => pure(&squeezed_amplitudes(amplitude, mu, dim), dim),
        StateSpec::PhotonAddedCoherent { amplitude } => {
            let base = coherent_amplitudes(amplitude, dim);
            let norm = (1.0 + amplitude.norm_sqr()).sqrt();
            let mut psi = vec![ZERO; dim];
            for n in 1..dim {
                psi[n] = base[n - 1] * (n as f64).sqrt() / norm;
            }
            pure(&psi, dim)
        }
        StateSpec::Cat { amplitude, phi } => {
            let norm = crate::states::cat_norm_sq(amplitude, phi)?.sqrt();
            let rel = Complex64::from_polar(1.0, phi);
            let psi: Vec<Complex64> = coherent_amplitudes(amplitude, dim)
                .into_iter()
                .enumerate()
                .map(|(n, c)| {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    c * (Complex64::new(1.0, 0.0) + rel * sign) * norm
                })
                .collect();
            pure(&psi, dim)
        }
        StateSpec::Thermal { nbar } => {
            let x = nbar / (nbar + 1.0);
            diagonal((0..dim).map(|m| x.powi(m as i32) / (nbar + 1.0)).collect(), dim)
        }
        StateSpec::PhotonAddedThermal { nbar } => {
            // (m+1)-weighted thermal distribution shifted up one level
            let x = nbar / (nbar + 1.0);
            let w = (0..dim)
                .map(|m| if m == 0 { 0.0 } else { m as f64 * x.powi(m as i32 - 1) / ((nbar + 1.0) * (nbar + 1.0)) })
                .collect();
            diagonal(w, dim)
        }
    }
}

/// Right-hand side of the master equation, `dρ/dt`, for real `M`:
///
/// ```text
/// Γ(N+1)(2aρa† − a†aρ − ρa†a) + ΓN(2a†ρa − aa†ρ − ρaa†)
///   − ΓM(2a†ρa† − a†a†ρ − ρa†a†) − ΓM(2aρa − aaρ − ρaa)
/// ```
///
/// with every operator product taken between truncated matrices. `ρ` is
/// assumed Hermitian.
pub fn lindblad_rhs(rho: &DensityMatrix, res: &ReservoirParams) -> DensityMatrix {
    let mut out = CMat::zeros(rho.dim(), rho.dim());
    rhs_into(&rho.data, res, &mut out);
    DensityMatrix { data: out, leakage: rho.leakage }
}

/// Fills the lower triangle and mirrors it; `r` must be Hermitian.
fn rhs_into(r: &CMat, res: &ReservoirParams, out: &mut CMat) {
    let d = r.nrows();
    let g = res.gamma();
    let (cn1, cn, cm) = (g * (res.big_n() + 1.0), g * res.big_n(), g * res.big_m());
    let sq: Vec<f64> = (0..d + 2).map(|k| (k as f64).sqrt()).collect();
    // (a a†)_{mm} in the truncated basis
    let aad = |m: usize| if m + 1 < d { (m + 1) as f64 } else { 0.0 };
    let rs = r.as_slice();
    let at = |m: usize, n: usize| rs[m + n * d];
    let os = out.as_mut_slice();
    for n in 0..d {
        for m in n..d {
            let rmn = at(m, n);
            let mut t1 = -(m as f64 + n as f64) * rmn;
            if m + 1 < d {
                t1 += 2.0 * sq[m + 1] * sq[n + 1] * at(m + 1, n + 1);
            }
            let mut t2 = -(aad(m) + aad(n)) * rmn;
            if n >= 1 {
                t2 += 2.0 * sq[m] * sq[n] * at(m - 1, n - 1);
            }
            // 2a†ρa† − a†a†ρ − ρa†a†
            let mut t3 = ZERO;
            if m >= 1 && n + 1 < d {
                t3 += 2.0 * sq[m] * sq[n + 1] * at(m - 1, n + 1);
            }
            if m >= 2 {
                t3 -= sq[m] * sq[m - 1] * at(m - 2, n);
            }
            if n + 2 < d {
                t3 -= sq[n + 1] * sq[n + 2] * at(m, n + 2);
            }
            // 2aρa − aaρ − ρaa
            let mut t4 = ZERO;
            if m + 1 < d && n >= 1 {
                t4 += 2.0 * sq[m + 1] * sq[n] * at(m + 1, n - 1);
            }
            if m + 2 < d {
                t4 -= sq[m + 1] * sq[m + 2] * at(m + 2, n);
            }
            if n >= 2 {
                t4 -= sq[n] * sq[n - 1] * at(m, n - 2);
            }
            let v = cn1 * t1 + cn * t2 - cm * (t3 + t4);
            os[n + m * d] = v.conj();
            os[m + n * d] = v;
        }
    }
}

fn axpy(y: &mut CMat, a: f64, x: &CMat) {
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi += xi * a;
    }
}

struct Rk4 {
    k: CMat,
    acc: CMat,
    stage: CMat,
}

impl Rk4 {
    fn new(d: usize) -> Self {
        Self { k: CMat::zeros(d, d), acc: CMat::zeros(d, d), stage: CMat::zeros(d, d) }
    }

    fn step(&mut self, rho: &mut CMat, res: &ReservoirParams, h: f64) {
        rhs_into(rho, res, &mut self.k);
        self.acc.copy_from(&self.k);
        self.stage.copy_from(rho);
        axpy(&mut self.stage, 0.5 * h, &self.k);
        rhs_into(&self.stage, res, &mut self.k);
        axpy(&mut self.acc, 2.0, &self.k);
        self.stage.copy_from(rho);
        axpy(&mut self.stage, 0.5 * h, &self.k);
        rhs_into(&self.stage, res, &mut self.k);
        axpy(&mut self.acc, 2.0, &self.k);
        self.stage.copy_from(rho);
        axpy(&mut self.stage, h, &self.k);
        rhs_into(&self.stage, res, &mut self.k);
        self.acc += &self.k;
        axpy(rho, h / 6.0, &self.acc);
    }
}

fn advance(rho: &mut DensityMatrix, res: &ReservoirParams, duration: f64, dt: f64, rk: &mut Rk4) -> Result<()> {
    if duration <= 0.0 {
        return Ok(());
    }
    let steps = (duration / dt - 1e-9).ceil().max(1.0) as usize;
    let h = duration / steps as f64;
    for _ in 0..steps {
        rk.step(&mut rho.data, res, h);
        rho.hermitize();
        let drift = (rho.trace().re - 1.0).abs();
        if drift > TRACE_DRIFT_LIMIT {
            return Err(Error::TraceDriftExceeded { drift });
        }
    }
    Ok(())
}

fn check_dt(dt: f64) -> Result<()> {
    if dt.is_finite() && dt > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "dt", reason: format!("must be positive, got {dt}") })
    }
}

/// `ρ(t)` by fixed-step RK4. The step is shrunk so that it divides `t`.
pub fn integrate(rho0: &DensityMatrix, res: &ReservoirParams, t: f64, dt: f64) -> Result<DensityMatrix> {
    check_time(t)?;
    check_dt(dt)?;
    let mut rho = rho0.clone();
    let mut rk = Rk4::new(rho.dim());
    advance(&mut rho, res, t, dt, &mut rk)?;
    Ok(rho)
}

/// `ρ` at each of the (ascending) `times`, from one trajectory.
pub fn integrate_grid(
    rho0: &DensityMatrix,
    res: &ReservoirParams,
    times: &[f64],
    dt: f64,
) -> Result<Vec<DensityMatrix>> {
    check_dt(dt)?;
    let mut rho = rho0.clone();
    let mut rk = Rk4::new(rho.dim());
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        check_time(t)?;
        if t < now {
            return Err(Error::InvalidParameter { name: "times", reason: "must be ascending".into() });
        }
        advance(&mut rho, res, t - now, dt, &mut rk)?;
        now = t;
        out.push(rho.clone());
    }
    Ok(out)
}

/// Truncated annihilation operator.
pub fn annihilation(dim: usize) -> CMat {
    CMat::from_fn(dim, dim, |m, n| if n == m + 1 { Complex64::new((n as f64).sqrt(), 0.0) } else { ZERO })
}

/// `tr(ρ a†^j a^k)` from truncated ladder-operator products.
pub fn moments_from_rho(rho: &DensityMatrix) -> MomentTable {
    let d = rho.dim();
    let a = annihilation(d);
    let ad = a.adjoint();
    let mut a_pow = vec![CMat::identity(d, d)];
    let mut ad_pow = vec![CMat::identity(d, d)];
    for k in 1..=MAX_ORDER {
        a_pow.push(&a_pow[k - 1] * &a);
        ad_pow.push(&ad_pow[k - 1] * &ad);
    }
    MomentTable::from_fn(|j, k| {
        let op = &ad_pow[j] * &a_pow[k];
        // tr(ρ·op) without forming the product
        rho.data.transpose().component_mul(&op).sum()
    })
}

/// Moments of `state` evolved by the oracle at each of `times`.
pub fn oracle_moments(
    state: &StateSpec,
    res: &ReservoirParams,
    times: &[f64],
    dim: usize,
    dt: f64,
) -> Result<Vec<MomentTable>> {
    let rho0 = prepare(state, dim)?;
    Ok(integrate_grid(&rho0, res, times, dt)?.iter().map(moments_from_rho).collect())
}

/// Truncated displacement operator `exp(z a† − z* a)`.
pub fn displacement(z: Complex64, dim: usize) -> CMat {
    let a = annihilation(dim);
    let gen = a.adjoint() * z - a * z.conj();
    gen.exp()
}

fn check_series_tau(tau: f64) -> Result<()> {
    if tau.is_nan() || tau <= 0.5 {
        return Err(Error::SeriesDiverges(tau));
    }
    if tau > 1.0 {
        return Err(Error::InvalidParameter { name: "tau", reason: format!("must be at most 1, got {tau}") });
    }
    Ok(())
}

/// `⟨n|D†(z) ρ D(z)|n⟩` for every level.
fn displaced_populations(rho: &CMat, disp: &CMat) -> Vec<f64> {
    let rd = rho * disp;
    (0..rho.nrows()).map(|n| disp.column(n).dotc(&rd.column(n)).re).collect()
}

fn series(pops: &[f64], tau: f64) -> f64 {
    let ratio = -(1.0 - tau) / tau;
    let mut weight = 1.0;
    let mut total = 0.0;
    for p in pops {
        total += weight * p;
        weight *= ratio;
    }
    total / (std::f64::consts::PI * tau)
}

/// `R(z, τ) = (1/πτ) Σ_n (−(1−τ)/τ)^n ⟨n|D†(z) ρ D(z)|n⟩`, valid for `1/2 < τ ≤ 1`.
pub fn quasiprob_from_rho(rho: &DensityMatrix, z: Complex64, tau: f64) -> Result<f64> {
    check_series_tau(tau)?;
    let pops = displaced_populations(&rho.data, &displacement(z, rho.dim()));
    Ok(series(&pops, tau))
}

/// Displaced populations on a square grid, reusable for any `τ`.
#[derive(Debug, Clone)]
pub struct QuasiprobGrid {
    pub points: Vec<Complex64>,
    pops: Vec<Vec<f64>>,
}

impl QuasiprobGrid {
    /// Grid `center + (i + j i)·step` for `|i|, |j| ≤ half_width/step`.
    ///
    /// Uses `D(x + iy) ∝ D(x) D(iy)`; the phase drops out of `D†ρD`.
    pub fn new(rho: &DensityMatrix, center: Complex64, half_width: f64, step: f64) -> Self {
        let d = rho.dim();
        let n = (half_width / step).round() as i64;
        let offsets: Vec<f64> = (-n..=n).map(|i| i as f64 * step).collect();
        let dx: Vec<CMat> = offsets.iter().map(|&x| displacement(Complex64::new(center.re + x, 0.0), d)).collect();
        let dy: Vec<CMat> = offsets.iter().map(|&y| displacement(Complex64::new(0.0, center.im + y), d)).collect();
        let rows: Vec<(Vec<Complex64>, Vec<Vec<f64>>)> = dx
            .par_iter()
            .zip(offsets.par_iter())
            .map(|(dxm, &x)| {
                let sigma = dxm.adjoint() * &rho.data * dxm;
                let mut pts = Vec::with_capacity(dy.len());
                let mut pops = Vec::with_capacity(dy.len());
                for (dym, &y) in dy.iter().zip(&offsets) {
                    pts.push(center + Complex64::new(x, y));
                    pops.push(displaced_populations(&sigma, dym));
                }
                (pts, pops)
            })
            .collect();
        let mut points = Vec::new();
        let mut pops = Vec::new();
        for (p, q) in rows {
            points.extend(p);
            pops.extend(q);
        }
        Self { points, pops }
    }

    pub fn values(&self, tau: f64) -> Result<Vec<f64>> {
        check_series_tau(tau)?;
        Ok(self.pops.iter().map(|p| series(p, tau)).collect())
    }

    pub fn min(&self, tau: f64) -> Result<f64> {
        Ok(self.values(tau)?.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// Smallest `τ ∈ (1/2, 1]` with `R ≥ −1e-12` on the grid, by bisection.
    /// `None` when `R` is already non-negative just above `τ = 1/2`.
    pub fn depth(&self, tol: f64) -> Result<Option<f64>> {
        let nonneg = |tau: f64| -> Result<bool> { Ok(self.min(tau)? >= crate::nonclassicality::NEGATIVITY_THRESHOLD) };
        let mut lo = 0.5 + 1e-6;
        if nonneg(lo)? {
            return Ok(None);
        }
        let mut hi = 1.0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if nonneg(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(Some(0.5 * (lo + hi)))
    }
}
