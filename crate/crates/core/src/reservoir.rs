//! Squeezed thermal reservoir parameters.
//!
//! The bath enters the master equation through a damping rate `Γ`, an
//! effective occupation `N` and a (real) anomalous correlation `M`, with
//! `M² ≤ N(N+1)`. The physical parametrization starts from a thermal
//! occupation `n̄₀` squeezed by `r e^{iθ}`, restricted here to `θ ∈ {0, π}`.

use serde::{Deserialize, Serialize};

use crate::error::{check_time, Error, Result};

const CONSTRAINT_RTOL: f64 = 1e-12;

/// Damping rate plus the `(N, M)` noise pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReservoirParams {
    gamma: f64,
    big_n: f64,
    big_m: f64,
}

/// Phase of the reservoir squeezing. Only the two phases that keep `M` real
/// are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SqueezePhase {
    Zero,
    Pi,
}

impl SqueezePhase {
    pub fn cos(self) -> f64 {
        match self {
            SqueezePhase::Zero => 1.0,
            SqueezePhase::Pi => -1.0,
        }
    }

    /// Accepts `0` or `π` (to within 1e-9 rad); anything else would make `M` complex.
    pub fn from_radians(theta: f64) -> Result<Self> {
        if theta.abs() < 1e-9 {
            Ok(SqueezePhase::Zero)
        } else if (theta - std::f64::consts::PI).abs() < 1e-9 {
            Ok(SqueezePhase::Pi)
        } else {
            Err(Error::ComplexSqueezing(theta))
        }
    }
}

/// Thermal occupation `n̄₀` and squeezing `(r, θ)` of the bath oscillators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalReservoirSpec {
    pub nbar0: f64,
    pub r: f64,
    pub theta: SqueezePhase,
}

impl ReservoirParams {
    /// Builds the reservoir from raw `(N, M)`.
    pub fn new(gamma: f64, big_n: f64, big_m: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                reason: format!("damping rate must be positive and finite, got {gamma}"),
            });
        }
        if !(big_n.is_finite() && big_n >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "N",
                reason: format!("must be non-negative and finite, got {big_n}"),
            });
        }
        if !big_m.is_finite() {
            return Err(Error::InvalidParameter { name: "M", reason: format!("must be finite, got {big_m}") });
        }
        let bound = big_n * (big_n + 1.0);
        if big_m * big_m > bound * (1.0 + CONSTRAINT_RTOL) + f64::EPSILON {
            return Err(Error::ConstraintViolated { n: big_n, m: big_m });
        }
        Ok(Self { gamma, big_n, big_m })
    }

    /// Vacuum reservoir (`N = M = 0`) with the given damping rate.
    pub fn vacuum(gamma: f64) -> Result<Self> {
        Self::new(gamma, 0.0, 0.0)
    }

    /// `N = n̄₀ cosh 2r + sinh² r`, `M = (2n̄₀ + 1) cos θ sinh r cosh r`.
    pub fn from_physical(spec: PhysicalReservoirSpec, gamma: f64) -> Result<Self> {
        let PhysicalReservoirSpec { nbar0, r, theta } = spec;
        if !(nbar0.is_finite() && nbar0 >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "nbar0",
                reason: format!("thermal occupation must be non-negative, got {nbar0}"),
            });
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: format!("squeezing magnitude must be non-negative, got {r}"),
            });
        }
        let sh = r.sinh();
        let ch = r.cosh();
        let big_n = nbar0 * (2.0 * r).cosh() + sh * sh;
        let big_m = (2.0 * nbar0 + 1.0) * theta.cos() * sh * ch;
        Self::new(gamma, big_n, big_m)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn big_n(&self) -> f64 {
        self.big_n
    }

    pub fn big_m(&self) -> f64 {
        self.big_m
    }

    /// `true` when `M² = N(N+1)` to rounding.
    pub fn is_ideally_squeezed(&self) -> bool {
        let bound = self.big_n * (self.big_n + 1.0);
        (self.big_m * self.big_m - bound).abs() <= 1e-12 * bound.max(1.0)
    }

    /// `Γt`
    pub fn scaled_time(&self, t: f64) -> f64 {
        self.gamma * t
    }

    /// `1 − e^{−2Γt}`, the common envelope of `N_t` and `M_t`.
    pub fn envelope(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(-(-2.0 * self.gamma * t).exp_m1())
    }

    /// `N_t = N(1 − e^{−2Γt})`
    pub fn nt(&self, t: f64) -> Result<f64> {
        Ok(self.big_n * self.envelope(t)?)
    }

    /// `M_t = M(1 − e^{−2Γt})`
    pub fn mt(&self, t: f64) -> Result<f64> {
        Ok(self.big_m * self.envelope(t)?)
    }

    /// Steady-state nonclassical depth of the reservoir itself, `max(0, |M| − N)`.
    pub fn steady_state_depth(&self) -> f64 {
        (self.big_m.abs() - self.big_n).max(0.0)
    }
}
