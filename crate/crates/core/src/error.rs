use thiserror::Error;

use crate::structure::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("structure fails validation:\n{0}")]
    Invalid(ValidationReport),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("budget exceeded: {what} = {needed} exceeds the limit {limit}{hint}")]
    Budget {
        what: String,
        needed: u128,
        limit: u128,
        hint: &'static str,
    },

    #[error("not a reduced cochain: {0}")]
    NotReducedCochain(String),

    #[error("cocycle condition fails: {0}")]
    Cocycle(String),

    #[error("section error: {0}")]
    Section(String),

    #[error("section is not linear: {0}")]
    Linearity(String),

    #[error("morphism error: {0}")]
    Morphism(String),

    #[error("unknown structure `{0}` (expected trivial(n), z4-brace or z4-lcs)")]
    UnknownStructure(String),

    #[error("inconsistent linear algebra: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
