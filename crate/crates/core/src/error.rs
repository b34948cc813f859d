use thiserror::Error;

/// Errors surfaced by the library.
///
/// Every variant carries a human-readable message; `kind` exposes a stable
/// machine-readable tag for structured output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    /// A symmetric factorization hit a pivot that is negative, or zero in
    /// strict mode. `value` is the exact pivot rendered as a string.
    #[error("matrix is not positive definite: pivot {index} = {value}")]
    NotPositiveDefinite { index: usize, value: String },

    /// Floating-point factorization cannot certify the result at working
    /// precision. The exact rational path is unaffected by this condition.
    #[error("ill-conditioned matrix: {0}")]
    IllConditioned(String),

    #[error("degenerate polynomial: {0}")]
    DegeneratePolynomial(String),

    #[error("iteration limit exceeded: {0}")]
    IterationLimit(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable kebab-case tag, suitable for JSON error envelopes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDistribution(_) => "invalid-distribution",
            Error::EmptyInput(_) => "empty-input",
            Error::Dimension(_) => "dimension",
            Error::NotPositiveDefinite { .. } => "not-positive-definite",
            Error::IllConditioned(_) => "ill-conditioned",
            Error::DegeneratePolynomial(_) => "degenerate-polynomial",
            Error::IterationLimit(_) => "iteration-limit",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
