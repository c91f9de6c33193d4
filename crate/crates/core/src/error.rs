use thiserror::Error;

use crate::state::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// A correlation-tensor entry kept an imaginary part, which only happens
    /// for non-Hermitian input.
    #[error("T{row}{col} has imaginary residual {residual:.3e}")]
    Inconsistent {
        row: usize,
        col: usize,
        residual: f64,
    },

    #[error("no sign change of lhs - rhs on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("not a valid density matrix: {0}")]
    InvalidState(ValidationReport),
}
