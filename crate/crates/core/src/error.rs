use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{what} must not be empty")]
    Empty { what: &'static str },

    #[error("{what}[{index}] = {value} is not a positive finite number")]
    NonPositive {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("exponent must be finite, got {0}")]
    NonFiniteExponent(f64),

    #[error("probability weights sum to {sum}, expected 1 within 1e-12")]
    NotNormalized { sum: f64 },

    #[error("{what} requires n >= {min}, got n = {n}")]
    TooShort {
        what: &'static str,
        min: usize,
        n: usize,
    },

    #[error("index k = {k} outside {lo}..={hi}")]
    IndexOutOfRange { k: usize, lo: usize, hi: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("y[{index}] = {value} lies outside [0, {upper}]")]
    OutOfBox {
        index: usize,
        value: f64,
        upper: f64,
    },

    #[error("y[{index}] lies on the box boundary; the corresponding sample entry would vanish")]
    BoundaryPoint { index: usize },

    #[error("grid dimension {dim} exceeds the limit of {limit}")]
    DimensionGuard { dim: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
