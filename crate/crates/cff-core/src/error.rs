use num_bigint::BigUint;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Term text that does not conform to the grammar. `offset` is the byte
    /// offset of the offending character in the input.
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The dominant exponent of a formula exceeds the configured bit ceiling.
    #[error("capacity: needs ~{required_bits} bits but the ceiling is {budget_bits} (override with CFF_BIT_BUDGET)")]
    Capacity {
        required_bits: BigUint,
        budget_bits: u64,
    },

    /// A step that the underlying theorems guarantee to be exact was not
    /// (e.g. an inexact free-term division). Signals an invalid spec or a bug.
    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("out of supported range: {0}")]
    Range(String),

    /// A constructed witness failed one of the identities it must satisfy.
    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("unsupported emission: {0}")]
    UnsupportedEmission(String),
}

pub type Result<T> = std::result::Result<T, Error>;
