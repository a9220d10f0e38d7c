use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("classical Routh array has a zero first-column entry in row {row}")]
    EarlyZero { row: usize },

    #[error("expected a polynomial of degree {expected}, got degree {actual}")]
    WrongDegree { expected: usize, actual: usize },

    #[error("polynomial has non-real coefficients")]
    NotReal,

    #[error("unknown stability test `{name}` (available: {available})")]
    UnknownTest { name: String, available: String },

    #[error("root finder did not converge")]
    NoConvergence,

    #[error("closed-loop state diverged at t = {time}")]
    Divergence { time: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
