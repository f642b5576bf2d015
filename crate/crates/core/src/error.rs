use thiserror::Error;

/// Errors raised by the numerical operations and the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("quadrature did not converge (error estimate {estimate:e}, tolerance {tolerance:e})")]
    NonConvergent { estimate: f64, tolerance: f64 },
    #[error("integrand is not finite at {at}")]
    NonFinite { at: f64 },
    #[error("function carries no analytic derivatives")]
    MissingDerivatives,
    #[error("function is not smooth enough for this operation")]
    MissingSmoothness,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid value: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
