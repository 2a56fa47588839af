use thiserror::Error;

/// Errors raised by the numeric and raster modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A field failed validation; `field` names the offending input.
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("zero #{index} has modulus {modulus} >= 1")]
    ZeroOutsideDisc { index: usize, modulus: f64 },

    #[error("pole: 1 - conj(a) z vanishes")]
    Pole,

    #[error("requested {requested} factors but only {stored} zeros are stored")]
    InsufficientPrefix { requested: usize, stored: usize },

    /// The stored prefix cannot push the truncation bound below the tolerance.
    #[error("prefix exhausted: best tail bound {achieved:e} exceeds tolerance {tolerance:e}")]
    PrefixExhausted { achieved: f64, tolerance: f64 },

    #[error("quadrature unresolved after {points} points (last change {difference:e})")]
    Resolution { points: usize, difference: f64 },

    #[error("zero population {count} exceeds the bound {limit}")]
    CountOverflow { count: u128, limit: u128 },

    #[error("probe #{index} rejected: {reason}")]
    Probe { index: usize, reason: String },

    #[error("grid format: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Invalid {
        field,
        reason: reason.into(),
    }
}
