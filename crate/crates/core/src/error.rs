use thiserror::Error;

/// Errors raised by the summation, bound and special-function routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MemfError {
    #[error("{what} order {order} is outside the supported range (max {max})")]
    OrderOutOfRange {
        what: &'static str,
        order: u32,
        max: u32,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("function does not supply a derivative of order {order}")]
    MissingDerivative { order: u32 },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    AccuracyFailure { estimate: f64, error: f64 },

    #[error("monotonicity of derivative order {order} could not be established")]
    MonotonicityNotEstablished { order: u32 },

    #[error("invalid monotone partition: {0}")]
    InvalidPartition(String),

    #[error("result is not finite")]
    NonFinite,

    #[error("Hermite envelope for n = {n} is unverified (checked up to n = {checked_max})")]
    ConjectureRange { n: u32, checked_max: u32 },

    #[error("empty summation range")]
    EmptyRange,

    #[error("tail majorant violated at index {index}")]
    MajorantViolated { index: i64 },

    #[error("function is not declared to decay at infinity")]
    NotDecaying,
}

impl MemfError {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            MemfError::OrderOutOfRange { .. } => "E_ORDER_RANGE",
            MemfError::InvalidArgument(_) => "E_ARGUMENT",
            MemfError::MissingDerivative { .. } => "E_MISSING_DERIVATIVE",
            MemfError::AccuracyFailure { .. } => "E_ACCURACY",
            MemfError::MonotonicityNotEstablished { .. } => "E_MONOTONICITY",
            MemfError::InvalidPartition(_) => "E_PARTITION",
            MemfError::NonFinite => "E_NON_FINITE",
            MemfError::ConjectureRange { .. } => "E_CONJECTURE_RANGE",
            MemfError::EmptyRange => "E_EMPTY_RANGE",
            MemfError::MajorantViolated { .. } => "E_MAJORANT",
            MemfError::NotDecaying => "E_NOT_DECAYING",
        }
    }
}

pub type Result<T> = std::result::Result<T, MemfError>;
