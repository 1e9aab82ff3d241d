use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Mismatched dimensions, hosts or variable counts.
    #[error("structural error: {0}")]
    Structural(String),

    /// An input outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// No Nakayama stabilization below the truncation order.
    #[error("possibly not m-primary: no stabilization below truncation order {order}")]
    NotMPrimary { order: usize },

    /// An operation needs a deeper truncation than the configured ceiling allows.
    #[error("truncation order {required} required but the ceiling is {ceiling}")]
    TruncationExhausted { required: usize, ceiling: usize },

    #[error("no reduction found up to n_max = {n_max} after {attempts} attempts")]
    NoReduction { n_max: usize, attempts: usize },

    #[error("polynomial regime not reached; extend table ({0})")]
    RegimeNotReached(String),

    #[error("series not rational in range: {0}")]
    SeriesNotRational(String),

    #[error("closure undecidable here: {0}")]
    ClosureUndecidable(String),

    /// A claim whose hypotheses are neither verified nor asserted.
    #[error("refused {claim}: {reason}")]
    Refusal { claim: String, reason: String },

    /// An internal consistency check failed; always a bug or a falsified claim.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
