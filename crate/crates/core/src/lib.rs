//! Single-mode cavity field coupled to a squeezed thermal reservoir.
//!
//! The field's Glauber–Sudarshan P-function evolves in closed form: the
//! initial P-function is contracted towards the origin and smoothed by a
//! Gaussian whose widths grow with the reservoir noise. This crate implements
//! that evolution for a catalogue of initial states, derives photon
//! statistics, quadrature variances and the nonclassical depth from it, and
//! ships a truncated Fock-space master-equation integrator that checks every
//! analytical result independently.
//!
//! ```
//! use squeezed_bath::{nonclassicality, ReservoirParams, StateSpec};
//!
//! let res = ReservoirParams::new(1.0, 1.0, -2f64.sqrt()).unwrap();
//! let state = StateSpec::thermal(1.0);
//! let t = nonclassicality::transition_time(&state, &res).unwrap();
//! assert!((t.crossing().unwrap() - 0.614).abs() < 1e-3);
//! ```

pub mod cli;
pub mod error;
pub mod evolution;
pub mod fock_oracle;
pub mod nonclassicality;
pub mod reservoir;
pub mod states;

pub use error::{Error, Result};
pub use reservoir::{PhysicalReservoirSpec, ReservoirParams, SqueezePhase};
pub use states::{MomentTable, PDescriptor, StateSpec};
