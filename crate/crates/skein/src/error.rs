//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),

    #[error("{name} must be odd (gcd(2,{name})=1 required), got {value}")]
    EvenBeta { name: &'static str, value: i64 },

    #[error("beta1+beta2 = 0 gives S^2 x S^1; use the torsion pipeline instead")]
    SphereProduct,

    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A syntax or domain error in the expression language, with a byte offset
/// into the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        Self {
            pos,
            message: message.into(),
        }
    }
}
