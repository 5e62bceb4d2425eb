//! Phase-space evolution under the squeezed thermal reservoir.
//!
//! The evolved P-function is the initial one rescaled, `P(αe^{Γt}, 0) e^{2Γt}`,
//! and then smoothed by `exp[(N_t+M_t)/4 ∂²_r + (N_t−M_t)/4 ∂²_i]`. For moment
//! extraction this is the law of `α = β e^{−Γt} + ξ` with `β` drawn from the
//! initial P-function and `ξ` an independent zero-mean (formal) Gaussian with
//! `Var ξ_r = (N_t+M_t)/2` and `Var ξ_i = (N_t−M_t)/2`. Either variance may be
//! negative; the moment formulas below are polynomial in them and stay exact.

use num_complex::Complex64;

use crate::error::{check_time, Result};
use crate::reservoir::ReservoirParams;
use crate::states::{initial_moments, initial_p_descriptor, MomentTable, PDescriptor, StateSpec};

/// Extra smoothing and amplitude decay accumulated by time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSmoothing {
    /// `(N_t + M_t)/4`
    pub add_r: f64,
    /// `(N_t − M_t)/4`
    pub add_i: f64,
    /// `e^{−Γt}`
    pub scale: f64,
}

impl GaussianSmoothing {
    pub fn at(res: &ReservoirParams, t: f64) -> Result<Self> {
        let nt = res.nt(t)?;
        let mt = res.mt(t)?;
        Ok(Self { add_r: (nt + mt) / 4.0, add_i: (nt - mt) / 4.0, scale: (-res.gamma() * t).exp() })
    }

    /// Applies the rescaling and the smoothing to an arbitrary descriptor.
    pub fn apply(&self, desc: &PDescriptor) -> PDescriptor {
        let d = self.scale;
        let d2 = d * d;
        let terms = desc
            .terms
            .iter()
            .map(|term| {
                let mut out = *term;
                out.center = term.center * d;
                out.smooth_r = term.smooth_r * d2 + self.add_r;
                out.smooth_i = term.smooth_i * d2 + self.add_i;
                out.prefactor.grad = [term.prefactor.grad[0] * d, term.prefactor.grad[1] * d];
                out.prefactor.laplacian = term.prefactor.laplacian * d2;
                out
            })
            .collect();
        // The interference operator acts on P^(c)(α, 0; t) with its amplitude damped by e^{−Γt}.
        let interference = desc.interference.map(|mut inter| {
            inter.amplitude *= d;
            inter.smooth_r = self.add_r;
            inter.smooth_i = self.add_i;
            inter
        });
        PDescriptor { terms, interference }
    }
}

/// Time-evolved P descriptor of a catalogued state.
pub fn evolved_descriptor(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<PDescriptor> {
    check_time(t)?;
    let initial = initial_p_descriptor(state)?;
    Ok(GaussianSmoothing::at(res, t)?.apply(&initial))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `E[x^n]` for a zero-mean Gaussian of (possibly negative) variance `v`.
fn gaussian_moment(n: usize, v: f64) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let double_fact: f64 = (1..n).step_by(2).map(|k| k as f64).product();
    double_fact * v.powi((n / 2) as i32)
}

/// `E[ξ*^p ξ^q]` for `ξ = ξ_r + iξ_i` with independent real and imaginary parts.
pub fn noise_moment(p: usize, q: usize, var_r: f64, var_i: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let mut total = Complex64::new(0.0, 0.0);
    for a in 0..=p {
        for b in 0..=q {
            let real_pow = a + b;
            let imag_pow = (p - a) + (q - b);
            if real_pow % 2 == 1 || imag_pow % 2 == 1 {
                continue;
            }
            let phase = (-i).powu((p - a) as u32) * i.powu((q - b) as u32);
            total += phase
                * binomial(p, a)
                * binomial(q, b)
                * gaussian_moment(real_pow, var_r)
                * gaussian_moment(imag_pow, var_i);
        }
    }
    total
}

/// Moments of `β e^{−Γt} + ξ` given the moments of `β`.
pub fn evolve_moments(m0: &MomentTable, res: &ReservoirParams, t: f64) -> Result<MomentTable> {
    check_time(t)?;
    let nt = res.nt(t)?;
    let mt = res.mt(t)?;
    let var_r = (nt + mt) / 2.0;
    let var_i = (nt - mt) / 2.0;
    let d = (-res.gamma() * t).exp();
    Ok(MomentTable::from_fn(|j, k| {
        let mut total = Complex64::new(0.0, 0.0);
        for p in 0..=j {
            for q in 0..=k {
                total += binomial(j, p)
                    * binomial(k, q)
                    * d.powi((p + q) as i32)
                    * m0.get(p, q)
                    * noise_moment(j - p, k - q, var_r, var_i);
            }
        }
        total
    }))
}

/// Evolved moment table of a catalogued state.
pub fn moments_at(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<MomentTable> {
    evolve_moments(&initial_moments(state)?, res, t)
}

/// `⟨a⟩(t) = ⟨a⟩(0) e^{−Γt}`
pub fn mean_a(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<Complex64> {
    check_time(t)?;
    Ok(initial_moments(state)?.mean_a() * (-res.gamma() * t).exp())
}

/// `⟨a²⟩(t) = ⟨a²⟩(0) e^{−2Γt} + M_t`
pub fn mean_a2(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<Complex64> {
    let e2 = (-2.0 * res.gamma() * t).exp();
    Ok(initial_moments(state)?.mean_a2() * e2 + res.mt(t)?)
}

/// `⟨a†a⟩(t) = ⟨a†a⟩(0) e^{−2Γt} + N_t`
pub fn mean_n(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<f64> {
    let e2 = (-2.0 * res.gamma() * t).exp();
    Ok(initial_moments(state)?.mean_n() * e2 + res.nt(t)?)
}

/// Closed-form Mandel Q(t) written in terms of the initial moments.
pub fn mandel_q(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<f64> {
    mandel_q_from_initial(&initial_moments(state)?, res, t)
}

pub fn mandel_q_from_initial(m0: &MomentTable, res: &ReservoirParams, t: f64) -> Result<f64> {
    let nt = res.nt(t)?;
    let mt = res.mt(t)?;
    let e2 = (-2.0 * res.gamma() * t).exp();
    let e4 = e2 * e2;
    let n0 = m0.mean_n();
    let a2_sum = (m0.get(0, 2) + m0.get(2, 0)).re;
    let numerator = (m0.mean_ad2_a2() - n0 * n0) * e4 + (2.0 * nt * n0 + mt * a2_sum) * e2 + nt * nt + mt * mt;
    let denominator = n0 * e2 + nt;
    if denominator.abs() <= f64::EPSILON * 16.0 {
        return Err(crate::error::Error::DegenerateDenominator);
    }
    Ok(numerator / denominator)
}

/// Closed-form quadrature variances `(V_X(t), V_Y(t))`.
pub fn quadrature_variances(state: &StateSpec, res: &ReservoirParams, t: f64) -> Result<(f64, f64)> {
    variances_from_initial(&initial_moments(state)?, res, t)
}

pub fn variances_from_initial(m0: &MomentTable, res: &ReservoirParams, t: f64) -> Result<(f64, f64)> {
    let nt = res.nt(t)?;
    let mt = res.mt(t)?;
    let e2 = (-2.0 * res.gamma() * t).exp();
    let (vx0, vy0) = m0.quadrature_variances();
    let vx = (2.0 * (nt + mt) + 1.0) / 4.0 + (vx0 - 0.25) * e2;
    let vy = (2.0 * (nt - mt) + 1.0) / 4.0 + (vy0 - 0.25) * e2;
    Ok((vx, vy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::states::smoothed_delta_moment;

    fn ideal() -> ReservoirParams {
        ReservoirParams::new(1.0, 1.0, -2f64.sqrt()).unwrap()
    }

    fn paper_res() -> ReservoirParams {
        ReservoirParams::new(1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn noise_moments_low_order() {
        let (vr, vi) = (0.7, -0.2);
        assert_eq!(noise_moment(0, 0, vr, vi), Complex64::new(1.0, 0.0));
        assert_eq!(noise_moment(0, 1, vr, vi), Complex64::new(0.0, 0.0));
        // E|ξ|² = v_r + v_i, E ξ² = v_r − v_i
        assert!((noise_moment(1, 1, vr, vi).re - 0.5).abs() < 1e-15);
        assert!((noise_moment(0, 2, vr, vi).re - 0.9).abs() < 1e-15);
        // E|ξ|⁴ = 3v_r² + 3v_i² + 2 v_r v_i
        let e4 = 3.0 * vr * vr + 3.0 * vi * vi + 2.0 * vr * vi;
        assert!((noise_moment(2, 2, vr, vi).re - e4).abs() < 1e-14);
        assert!(noise_moment(2, 2, vr, vi).im.abs() < 1e-15);
    }

    #[test]
    fn thermal_descriptor_at_t() {
        let res = ideal();
        let t = 0.37;
        let d = evolved_descriptor(&StateSpec::thermal(1.0), &res, t).unwrap();
        let e2 = (-2.0 * t).exp();
        let (nt, mt) = (res.nt(t).unwrap(), res.mt(t).unwrap());
        assert!((d.terms[0].smooth_r - (e2 + nt + mt) / 4.0).abs() < 1e-15);
        assert!((d.terms[0].smooth_i - (e2 + nt - mt) / 4.0).abs() < 1e-15);
        assert_eq!(d.terms[0].center, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn squeezed_descriptor_at_t() {
        let res = paper_res();
        let t = 0.2;
        let g = Complex64::new(1.0, -0.5);
        let mu: f64 = 1.0;
        let s = (2.0 * mu).exp();
        let d = evolved_descriptor(&StateSpec::SqueezedCoherent { amplitude: g, mu }, &res, t).unwrap();
        let e2 = (-2.0 * t).exp();
        let (nt, mt) = (res.nt(t).unwrap(), res.mt(t).unwrap());
        assert!((d.terms[0].smooth_r - ((nt + mt) / 4.0 + e2 * (1.0 - s) / (8.0 * s))).abs() < 1e-15);
        assert!((d.terms[0].smooth_i - ((nt - mt) / 4.0 - e2 * (1.0 - s) / 8.0)).abs() < 1e-15);
        assert!((d.terms[0].center - g * (-t).exp()).norm() < 1e-15);
    }

    #[test]
    fn photon_added_thermal_descriptor_at_t() {
        let res = paper_res();
        let t = 0.4;
        let d = evolved_descriptor(&StateSpec::photon_added_thermal(1.0), &res, t).unwrap();
        let e2 = (-2.0 * t).exp();
        assert!((d.terms[0].prefactor.laplacian - 2.0 * e2 / 4.0).abs() < 1e-15);
        assert!((d.terms[0].smooth_r - (e2 + res.nt(t).unwrap() + res.mt(t).unwrap()) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn identity_at_time_zero() {
        let states = [
            StateSpec::coherent(0.3, 0.2),
            StateSpec::thermal(1.0),
            StateSpec::squeezed_coherent(1.0, 0.0, 1.0),
            StateSpec::photon_added_coherent(1.0, 0.5),
            StateSpec::photon_added_thermal(1.0),
            StateSpec::cat(1.0, 0.0, 0.4),
        ];
        for s in &states {
            let d0 = initial_p_descriptor(s).unwrap();
            assert_eq!(evolved_descriptor(s, &paper_res(), 0.0).unwrap(), d0);
            let m0 = initial_moments(s).unwrap();
            assert!(evolve_moments(&m0, &paper_res(), 0.0).unwrap().max_abs_diff(&m0) < 1e-15);
        }
    }

    #[test]
    fn negative_time_rejected() {
        let s = StateSpec::thermal(1.0);
        assert_eq!(evolved_descriptor(&s, &ideal(), -0.1), Err(Error::NegativeTime(-0.1)));
        let m0 = initial_moments(&s).unwrap();
        assert!(evolve_moments(&m0, &ideal(), -1.0).is_err());
    }

    #[test]
    fn low_order_moment_laws() {
        let res = ideal();
        let s = StateSpec::squeezed_coherent(0.7, -0.4, 0.6);
        let m0 = initial_moments(&s).unwrap();
        for &t in &[0.0, 0.1, 0.55, 2.0, 7.0] {
            let m = evolve_moments(&m0, &res, t).unwrap();
            let d = (-t).exp();
            assert!((m.mean_a() - m0.mean_a() * d).norm() < 1e-14);
            assert!((m.mean_a2() - (m0.mean_a2() * d * d + res.mt(t).unwrap())).norm() < 1e-14);
            assert!((m.mean_n() - (m0.mean_n() * d * d + res.nt(t).unwrap())).abs() < 1e-14);
            assert!((m.norm() - 1.0).abs() < 1e-15);
            assert!(m.hermiticity_defect() < 1e-13);
        }
    }

    #[test]
    fn known_values_at_time_zero() {
        let res = paper_res();
        assert!(mandel_q(&StateSpec::coherent(1.3, 0.2), &res, 0.0).unwrap().abs() < 1e-14);
        assert!((mandel_q(&StateSpec::thermal(0.8), &res, 0.0).unwrap() - 0.8).abs() < 1e-14);
        let (vx, vy) = quadrature_variances(&StateSpec::coherent(1.0, 1.0), &res, 0.0).unwrap();
        assert!((vx - 0.25).abs() < 1e-15 && (vy - 0.25).abs() < 1e-15);
        let s = 2f64.exp();
        let (vx, vy) = quadrature_variances(&StateSpec::squeezed_coherent(1.0, 0.0, 1.0), &res, 0.0).unwrap();
        assert!((vx - 1.0 / (4.0 * s)).abs() < 1e-14);
        assert!((vy - s / 4.0).abs() < 1e-13);
    }

    #[test]
    fn vacuum_mandel_q_is_degenerate() {
        let res = paper_res();
        let vac = StateSpec::coherent(0.0, 0.0);
        assert_eq!(mandel_q(&vac, &res, 0.0), Err(Error::DegenerateDenominator));
        // defined as soon as the reservoir has injected noise
        assert!(mandel_q(&vac, &res, 0.1).is_ok());
    }

    #[test]
    fn long_time_limits() {
        for res in [ideal(), paper_res(), ReservoirParams::new(1.0, 1.0, 0.0).unwrap()] {
            let (n, m) = (res.big_n(), res.big_m());
            for s in
                [StateSpec::thermal(1.0), StateSpec::photon_added_coherent(1.0, 0.0), StateSpec::cat(1.0, 0.0, 0.0)]
            {
                let q = mandel_q(&s, &res, 60.0).unwrap();
                assert!((q - (n * n + m * m) / n).abs() < 1e-12);
                let (vx, vy) = quadrature_variances(&s, &res, 60.0).unwrap();
                assert!((vx - (2.0 * (n + m) + 1.0) / 4.0).abs() < 1e-12);
                assert!((vy - (2.0 * (n - m) + 1.0) / 4.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_forms_agree_with_moment_evolution() {
        let states = [
            StateSpec::coherent(1.0, 0.0),
            StateSpec::thermal(1.0),
            StateSpec::squeezed_coherent(1.0, 0.0, 1.0),
            StateSpec::photon_added_coherent(1.0, 0.0),
            StateSpec::photon_added_thermal(1.0),
            StateSpec::cat(1.0, 0.0, 0.0),
        ];
        for res in [ideal(), paper_res()] {
            for s in &states {
                for i in 0..=20 {
                    let t = 0.1 * i as f64;
                    let m = moments_at(s, &res, t).unwrap();
                    let q = mandel_q(s, &res, t).unwrap();
                    assert!((q - m.mandel_q().unwrap()).abs() < 1e-12 * (1.0 + q.abs()), "{s:?} t={t}");
                    let (vx, vy) = quadrature_variances(s, &res, t).unwrap();
                    let (mx, my) = m.quadrature_variances();
                    assert!((vx - mx).abs() < 1e-12 && (vy - my).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn descriptor_route_matches_moment_route() {
        let states = [
            StateSpec::coherent(1.0, -0.3),
            StateSpec::thermal(1.0),
            StateSpec::squeezed_coherent(1.0, 0.2, 1.0),
            StateSpec::photon_added_coherent(1.0, 0.4),
            StateSpec::photon_added_thermal(1.5),
        ];
        for res in [ideal(), paper_res()] {
            for s in &states {
                for &t in &[0.0, 0.05, 0.3, 1.0, 3.0] {
                    let by_desc = evolved_descriptor(s, &res, t).unwrap().moments().unwrap();
                    let by_noise = moments_at(s, &res, t).unwrap();
                    assert!(by_desc.max_abs_diff(&by_noise) < 1e-12, "{s:?} at t={t}");
                }
            }
        }
    }

    #[test]
    fn descriptor_moments_use_the_delta_series() {
        // single Gaussian term reproduces the 1-D series in each coordinate
        let d = evolved_descriptor(&StateSpec::thermal(0.5), &ideal(), 0.3).unwrap();
        let m = d.moments().unwrap();
        let t = &d.terms[0];
        let x2 = smoothed_delta_moment(2, t.smooth_r, 0.0);
        let y2 = smoothed_delta_moment(2, t.smooth_i, 0.0);
        assert!((m.mean_n() - (x2 + y2)).abs() < 1e-15);
        assert!((m.mean_a2().re - (x2 - y2)).abs() < 1e-15);
    }

    #[test]
    fn thermal_bath_keeps_symmetric_states_symmetric() {
        let res = ReservoirParams::new(1.3, 0.8, 0.0).unwrap();
        for s in [StateSpec::thermal(2.0), StateSpec::coherent(0.5, 1.0), StateSpec::photon_added_thermal(1.0)] {
            for i in 0..30 {
                let (vx, vy) = quadrature_variances(&s, &res, 0.1 * i as f64).unwrap();
                assert!((vx - vy).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn frozen_oracle_fixture_coherent_under_ideal_reservoir() {
        // dim-64 RK4 (dt = 1e-3) integration of the master equation with numpy
        let fixture = [
            ((0, 0), 9.999_999_999_999_996e-1),
            ((0, 1), 7.408_182_206_817_197e-1),
            ((0, 2), -8.926_506_732_662_237e-2),
            ((0, 3), -1.011_526_884_517_971),
            ((0, 4), -5.784_836_670_787_914e-1),
            ((1, 1), 9.999_999_999_999_999e-1),
            ((1, 2), 6.023_679_335_363_201e-1),
            ((1, 3), -8.701_836_258_058_185e-1),
            ((2, 2), 1.405_579_828_423_102),
        ];
        let m = moments_at(&StateSpec::coherent(1.0, 0.0), &ideal(), 0.3).unwrap();
        for ((j, k), v) in fixture {
            assert!((m.get(j, k) - Complex64::new(v, 0.0)).norm() < 1e-8, "m[{j}{k}]");
        }
    }
}
