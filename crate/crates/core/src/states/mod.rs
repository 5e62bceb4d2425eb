//! Catalogue of initial cavity-field states.
//!
//! Each state knows its exact normally ordered moments at `t = 0` and its
//! P-function descriptor.

mod descriptor;
mod moments;

pub use descriptor::{smoothed_delta_moment, CatInterference, DiffPrefactor, PDescriptor, SmoothedDelta};
pub use moments::{MomentTable, MAX_ORDER};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Initial state of the cavity field.
///
/// Squeezing `mu` is real, with `s = e^{2μ}`; `phi` is the relative phase of
/// the cat superposition `|γ⟩ + e^{iφ}|−γ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Coherent { amplitude: Complex64 },
    Thermal { nbar: f64 },
    SqueezedCoherent { amplitude: Complex64, mu: f64 },
    PhotonAddedCoherent { amplitude: Complex64 },
    PhotonAddedThermal { nbar: f64 },
    Cat { amplitude: Complex64, phi: f64 },
}

fn finite_amplitude(amplitude: Complex64) -> Result<()> {
    if amplitude.re.is_finite() && amplitude.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "amplitude", reason: format!("must be finite, got {amplitude}") })
    }
}

impl StateSpec {
    pub fn coherent(re: f64, im: f64) -> Self {
        StateSpec::Coherent { amplitude: Complex64::new(re, im) }
    }

    pub fn thermal(nbar: f64) -> Self {
        StateSpec::Thermal { nbar }
    }

    pub fn squeezed_coherent(re: f64, im: f64, mu: f64) -> Self {
        StateSpec::SqueezedCoherent { amplitude: Complex64::new(re, im), mu }
    }

    pub fn photon_added_coherent(re: f64, im: f64) -> Self {
        StateSpec::PhotonAddedCoherent { amplitude: Complex64::new(re, im) }
    }

    pub fn photon_added_thermal(nbar: f64) -> Self {
        StateSpec::PhotonAddedThermal { nbar }
    }

    pub fn cat(re: f64, im: f64, phi: f64) -> Self {
        StateSpec::Cat { amplitude: Complex64::new(re, im), phi }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            StateSpec::Coherent { .. } => "coherent",
            StateSpec::Thermal { .. } => "thermal",
            StateSpec::SqueezedCoherent { .. } => "squeezed_coherent",
            StateSpec::PhotonAddedCoherent { .. } => "photon_added_coherent",
            StateSpec::PhotonAddedThermal { .. } => "photon_added_thermal",
            StateSpec::Cat { .. } => "cat",
        }
    }

    /// Coherent, thermal and squeezed-coherent states have Gaussian P-functions.
    pub fn is_gaussian(&self) -> bool {
        matches!(self, StateSpec::Coherent { .. } | StateSpec::Thermal { .. } | StateSpec::SqueezedCoherent { .. })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            StateSpec::Coherent { amplitude } | StateSpec::PhotonAddedCoherent { amplitude } => {
                finite_amplitude(amplitude)
            }
            StateSpec::Thermal { nbar } => {
                if nbar.is_finite() && nbar >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "nbar",
                        reason: format!("mean photon number must be non-negative, got {nbar}"),
                    })
                }
            }
            StateSpec::PhotonAddedThermal { nbar } => {
                if nbar.is_finite() && nbar > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "nbar",
                        reason: format!(
                            "photon-added thermal state needs nbar > 0 (P-function divides by nbar^3), got {nbar}"
                        ),
                    })
                }
            }
            StateSpec::SqueezedCoherent { amplitude, mu } => {
                finite_amplitude(amplitude)?;
                if mu.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter { name: "mu", reason: format!("must be finite, got {mu}") })
                }
            }
            StateSpec::Cat { amplitude, phi } => {
                finite_amplitude(amplitude)?;
                if phi.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter { name: "phi", reason: format!("must be finite, got {phi}") })
                }
            }
        }
    }
}

/// Squared normalization `1 / (2(1 + e^{−2|γ|²} cos φ))` of the cat state.
pub(crate) fn cat_norm_sq(amplitude: Complex64, phi: f64) -> Result<f64> {
    let overlap = (-2.0 * amplitude.norm_sqr()).exp();
    let denom = 2.0 * (1.0 + overlap * phi.cos());
    if denom <= 1e-300 {
        return Err(Error::InvalidParameter {
            name: "amplitude",
            reason: "odd cat state with zero amplitude is not normalizable".into(),
        });
    }
    Ok(1.0 / denom)
}

/// Exact normally ordered moments of the state at `t = 0`.
///
/// Cat moments follow from the coherent-state superposition directly; every
/// other state integrates its P-function descriptor.
pub fn initial_moments(state: &StateSpec) -> Result<MomentTable> {
    state.validate()?;
    match *state {
        StateSpec::Cat { amplitude, phi } => {
            let norm = cat_norm_sq(amplitude, phi)?;
            let overlap = (-2.0 * amplitude.norm_sqr()).exp();
            let branches = [(Complex64::new(1.0, 0.0), amplitude), (Complex64::from_polar(1.0, phi), -amplitude)];
            Ok(MomentTable::from_fn(|j, k| {
                let mut total = Complex64::new(0.0, 0.0);
                for (bi, &(ci, ai)) in branches.iter().enumerate() {
                    for (bk, &(ck, ak)) in branches.iter().enumerate() {
                        let inner = if bi == bk { 1.0 } else { overlap };
                        total += ci.conj() * ck * ai.conj().powu(j as u32) * ak.powu(k as u32) * inner;
                    }
                }
                total * norm
            }))
        }
        _ => initial_p_descriptor(state)?.moments(),
    }
}

/// P-function descriptor of the state at `t = 0`.
pub fn initial_p_descriptor(state: &StateSpec) -> Result<PDescriptor> {
    state.validate()?;
    let zero = Complex64::new(0.0, 0.0);
    let descriptor = match *state {
        StateSpec::Coherent { amplitude } => PDescriptor::single(SmoothedDelta::delta(amplitude)),
        StateSpec::Thermal { nbar } => PDescriptor::single(SmoothedDelta {
            prefactor: DiffPrefactor::scalar(1.0),
            center: zero,
            smooth_r: nbar / 4.0,
            smooth_i: nbar / 4.0,
        }),
        StateSpec::SqueezedCoherent { amplitude, mu } => {
            let s = (2.0 * mu).exp();
            PDescriptor::single(SmoothedDelta {
                prefactor: DiffPrefactor::scalar(1.0),
                center: amplitude,
                smooth_r: (1.0 - s) / (8.0 * s),
                smooth_i: -(1.0 - s) / 8.0,
            })
        }
        StateSpec::PhotonAddedCoherent { amplitude } => {
            // [Δ_γ + 4γ·∇_γ + 4(|γ|²+1)] δ²(β − γ) / 4(|γ|²+1), rewritten with ∇_γ = −∇_β
            let w = 1.0 + amplitude.norm_sqr();
            PDescriptor::single(SmoothedDelta {
                prefactor: DiffPrefactor {
                    constant: 1.0,
                    grad: [-amplitude.re / w, -amplitude.im / w],
                    laplacian: 1.0 / (4.0 * w),
                },
                center: amplitude,
                smooth_r: 0.0,
                smooth_i: 0.0,
            })
        }
        StateSpec::PhotonAddedThermal { nbar } => PDescriptor::single(SmoothedDelta {
            prefactor: DiffPrefactor { constant: 1.0, grad: [0.0, 0.0], laplacian: (nbar + 1.0) / 4.0 },
            center: zero,
            smooth_r: nbar / 4.0,
            smooth_i: nbar / 4.0,
        }),
        StateSpec::Cat { amplitude, phi } => {
            let norm = cat_norm_sq(amplitude, phi)?;
            let lobe =
                |center| SmoothedDelta { prefactor: DiffPrefactor::scalar(norm), center, smooth_r: 0.0, smooth_i: 0.0 };
            PDescriptor {
                terms: vec![lobe(amplitude), lobe(-amplitude)],
                interference: Some(CatInterference {
                    weight: 2.0 * (-2.0 * amplitude.norm_sqr()).exp() * norm,
                    phase: phi,
                    amplitude,
                    smooth_r: 0.0,
                    smooth_i: 0.0,
                }),
            }
        }
    };
    Ok(descriptor)
}
