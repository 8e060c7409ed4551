use thiserror::Error;

/// Errors raised by the model constructors and bound evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An index or parameter lies outside the domain an operation accepts.
    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: String,
        expected: String,
    },

    /// A structural precondition (e.g. a valid probability vector) is violated.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The linearity constant `a` fell outside the open interval (0, 1).
    #[error("linearity constant a = {a} is outside (0, 1); the normal bound does not apply")]
    DegenerateStep { a: String },

    /// The trivial representation `(n)` was supplied where a nontrivial one is needed.
    #[error("partition ({n}) is the trivial representation")]
    TrivialRepresentation { n: u32 },

    /// A replace-k step count outside both regimes covered by the negative-binomial lemmas.
    #[error("k = {k} is not covered by either the small-k or the large-k regime")]
    UncoveredRegime { k: u32 },

    /// The Poisson constant C_lambda is only known for lambda <= 1.
    #[error("lambda = {lambda} > 1 requires an explicit C_lambda")]
    MissingCLambda { lambda: f64 },

    /// Two routes to the same quantity disagreed; indicates a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(
    name: &'static str,
    value: impl ToString,
    expected: impl ToString,
) -> Error {
    Error::OutOfRange {
        name,
        value: value.to_string(),
        expected: expected.to_string(),
    }
}
