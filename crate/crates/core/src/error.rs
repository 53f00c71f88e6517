use thiserror::Error;

use crate::structure::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A table or label list is malformed (wrong dimensions, index out of
    /// range, duplicate or empty labels). Distinct from a law violation.
    #[error("malformed structure: {0}")]
    Shape(String),

    /// The tables are well-shaped but violate the algebraic laws.
    #[error("{what} does not satisfy its laws: {report}")]
    Invalid { what: String, report: ValidationReport },

    #[error("capacity exceeded: {what} has size {size}, limit is {limit}")]
    Capacity { what: String, size: u128, limit: u128 },

    #[error("carrier mismatch: expected {expected}, found {found}")]
    CarrierMismatch { expected: String, found: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, size: u128, limit: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            size,
            limit: limit as u128,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
