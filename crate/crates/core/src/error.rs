use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("reservoir constraint M^2 <= N(N+1) violated: N = {n}, M = {m}")]
    ConstraintViolated { n: f64, m: f64 },

    #[error("squeezing phase must be 0 or pi for a real M, got {0}")]
    ComplexSqueezing(f64),

    #[error("Mandel Q undefined: mean photon number is zero")]
    DegenerateDenominator,

    #[error("smoothing coefficients not positive (c_r = {c_r}, c_i = {c_i}); R(z, tau) is singular")]
    SingularSmoothing { c_r: f64, c_i: f64 },

    #[error("operation not supported for {0} states")]
    UnsupportedState(&'static str),

    #[error("Fock truncation too small: dim = {dim}, leakage = {leakage:.3e}; increase --dim")]
    TruncationTooSmall { dim: usize, leakage: f64 },

    #[error("trace drifted by {drift:.3e} during integration")]
    TraceDriftExceeded { drift: f64 },

    #[error("quasiprobability series diverges for tau = {0} (needs tau > 1/2)")]
    SeriesDiverges(f64),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        Err(Error::NegativeTime(t))
    } else {
        Ok(())
    }
}
