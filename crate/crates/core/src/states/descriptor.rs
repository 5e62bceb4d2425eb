//! Structured P-function descriptors.
//!
//! Every catalogued P-function is a finite sum of terms of the form
//!
//! ```text
//! (k₀ + g_r ∂_r + g_i ∂_i + l Δ) exp(c_r ∂²_r + c_i ∂²_i) δ²(α − α₀)
//! ```
//!
//! with derivatives taken with respect to the phase-space point `α`. The
//! smoothing coefficients may be negative, in which case the term is a
//! formal (singular) distribution: its moments are still well defined, but
//! pointwise values only exist after enough extra Gaussian smoothing.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::moments::{MomentTable, MAX_ORDER};
use crate::error::{Error, Result};

/// Differential prefactor `k₀ + g_r ∂_r + g_i ∂_i + l Δ` acting on a smoothed delta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffPrefactor {
    pub constant: f64,
    pub grad: [f64; 2],
    pub laplacian: f64,
}

impl DiffPrefactor {
    pub const fn scalar(constant: f64) -> Self {
        Self { constant, grad: [0.0, 0.0], laplacian: 0.0 }
    }

    pub fn is_scalar(&self) -> bool {
        self.grad == [0.0, 0.0] && self.laplacian == 0.0
    }
}

/// One term `prefactor · exp(c_r ∂²_r + c_i ∂²_i) δ²(α − center)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothedDelta {
    pub prefactor: DiffPrefactor,
    pub center: Complex64,
    pub smooth_r: f64,
    pub smooth_i: f64,
}

/// Interference part of a cat-state P-function, carried as metadata only:
/// `weight · cos(φ + a_i ∂²_r − a_r ∂²_i) exp(c_r ∂²_r + c_i ∂²_i) δ²(α)`
/// where `a = amplitude`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatInterference {
    pub weight: f64,
    pub phase: f64,
    pub amplitude: Complex64,
    pub smooth_r: f64,
    pub smooth_i: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PDescriptor {
    pub terms: Vec<SmoothedDelta>,
    pub interference: Option<CatInterference>,
}

/// `∫ x^k exp(c ∂²/∂x²) δ(x − y) dx`, summed as a series of delta derivatives:
/// `Σ_n cⁿ/n! · k!/(k−2n)! · y^{k−2n}`. Valid for either sign of `c`.
pub fn smoothed_delta_moment(k: u32, coeff: f64, center: f64) -> f64 {
    let mut total = 0.0;
    let mut n = 0;
    while 2 * n <= k {
        // k!/(k−2n)! / n!
        let falling: f64 = ((k - 2 * n + 1)..=k).map(f64::from).product();
        let n_fact: f64 = (1..=n).map(f64::from).product();
        total += coeff.powi(n as i32) / n_fact * falling * center.powi((k - 2 * n) as i32);
        n += 1;
    }
    total
}

/// Polynomial in real phase-space coordinates, `Σ c_{pq} x^p y^q`, degree ≤ 4.
#[derive(Clone, Copy)]
struct Poly2([[Complex64; MAX_ORDER + 1]; MAX_ORDER + 1]);

impl Poly2 {
    fn zero() -> Self {
        Poly2([[Complex64::new(0.0, 0.0); MAX_ORDER + 1]; MAX_ORDER + 1])
    }

    /// `α*^j α^k` with `α = x + iy`.
    fn normal_monomial(j: usize, k: usize) -> Self {
        let mut p = Self::zero();
        p.0[0][0] = Complex64::new(1.0, 0.0);
        let conj_factor = [Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)];
        let factor = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        for _ in 0..j {
            p = p.mul_linear(conj_factor);
        }
        for _ in 0..k {
            p = p.mul_linear(factor);
        }
        p
    }

    /// Multiply by `u x + v y`.
    fn mul_linear(&self, [u, v]: [Complex64; 2]) -> Self {
        let mut out = Self::zero();
        for p in 0..=MAX_ORDER {
            for q in 0..=MAX_ORDER - p {
                let c = self.0[p][q];
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                out.0[p + 1][q] += c * u;
                out.0[p][q + 1] += c * v;
            }
        }
        out
    }

    fn d_x(&self) -> Self {
        let mut out = Self::zero();
        for p in 1..=MAX_ORDER {
            for q in 0..=MAX_ORDER - p {
                out.0[p - 1][q] += self.0[p][q] * p as f64;
            }
        }
        out
    }

    fn d_y(&self) -> Self {
        let mut out = Self::zero();
        for p in 0..MAX_ORDER {
            for q in 1..=MAX_ORDER - p {
                out.0[p][q - 1] += self.0[p][q] * q as f64;
            }
        }
        out
    }

    fn axpy(&mut self, a: f64, other: &Self) {
        for p in 0..=MAX_ORDER {
            for q in 0..=MAX_ORDER - p {
                self.0[p][q] += other.0[p][q] * a;
            }
        }
    }
}

impl SmoothedDelta {
    pub fn delta(center: Complex64) -> Self {
        Self { prefactor: DiffPrefactor::scalar(1.0), center, smooth_r: 0.0, smooth_i: 0.0 }
    }

    /// `∫ α*^j α^k · term d²α`.
    ///
    /// The prefactor is moved onto the monomial by parts (first derivatives
    /// change sign), then each monomial is integrated against the separable
    /// smoothed delta.
    fn moment(&self, j: usize, k: usize) -> Complex64 {
        let f = Poly2::normal_monomial(j, k);
        let pre = &self.prefactor;
        let mut g = Poly2::zero();
        g.axpy(pre.constant, &f);
        g.axpy(-pre.grad[0], &f.d_x());
        g.axpy(-pre.grad[1], &f.d_y());
        g.axpy(pre.laplacian, &f.d_x().d_x());
        g.axpy(pre.laplacian, &f.d_y().d_y());
        let mut total = Complex64::new(0.0, 0.0);
        for p in 0..=MAX_ORDER {
            for q in 0..=MAX_ORDER - p {
                let c = g.0[p][q];
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                total += c
                    * smoothed_delta_moment(p as u32, self.smooth_r, self.center.re)
                    * smoothed_delta_moment(q as u32, self.smooth_i, self.center.im);
            }
        }
        total
    }

    /// Pointwise value of the term after an additional isotropic smoothing
    /// `exp(τ/4 Δ)`. Requires `c_r + τ/4 > 0` and `c_i + τ/4 > 0`.
    pub fn smoothed_value(&self, z: Complex64, tau: f64) -> Result<f64> {
        let cr = self.smooth_r + tau / 4.0;
        let ci = self.smooth_i + tau / 4.0;
        if !(cr > 0.0 && ci > 0.0) {
            return Err(Error::SingularSmoothing { c_r: cr, c_i: ci });
        }
        let u = z - self.center;
        let gauss = (-u.re * u.re / (4.0 * cr) - u.im * u.im / (4.0 * ci)).exp() / (4.0 * PI * (cr * ci).sqrt());
        let pre = &self.prefactor;
        // ∂G/G and ΔG/G for the anisotropic Gaussian
        let dx = -u.re / (2.0 * cr);
        let dy = -u.im / (2.0 * ci);
        let lap = u.re * u.re / (4.0 * cr * cr) - 1.0 / (2.0 * cr) + u.im * u.im / (4.0 * ci * ci) - 1.0 / (2.0 * ci);
        Ok(gauss * (pre.constant + pre.grad[0] * dx + pre.grad[1] * dy + pre.laplacian * lap))
    }
}

impl PDescriptor {
    pub fn single(term: SmoothedDelta) -> Self {
        Self { terms: vec![term], interference: None }
    }

    /// Normally ordered moments obtained by integrating the descriptor.
    ///
    /// Fails for cat states, whose interference operator is not evaluated.
    pub fn moments(&self) -> Result<MomentTable> {
        if self.interference.is_some() {
            return Err(Error::UnsupportedState("cat"));
        }
        Ok(MomentTable::from_fn(|j, k| self.terms.iter().map(|t| t.moment(j, k)).sum()))
    }

    /// `R(z, τ)`: the descriptor smoothed by `exp(τ/4 Δ)` and evaluated at `z`.
    pub fn smoothed_value(&self, z: Complex64, tau: f64) -> Result<f64> {
        if self.interference.is_some() {
            return Err(Error::UnsupportedState("cat"));
        }
        self.terms.iter().map(|t| t.smoothed_value(z, tau)).sum()
    }

    /// Smallest `τ` at which every term becomes a regular function.
    pub fn regularization_threshold(&self) -> f64 {
        self.terms.iter().map(|t| -4.0 * t.smooth_r.min(t.smooth_i)).fold(0.0, f64::max)
    }

    /// Largest `|center|` over the terms.
    pub fn max_center_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.center.norm()).fold(0.0, f64::max)
    }
}
