use thiserror::Error;

/// Errors raised by the library. Validation failures of quandles, cocycles and
/// diagrams are *reported* through the various `Validation` values instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("automorphism search bound exceeded: order {order} > bound {bound}")]
    SearchBoundExceeded { order: usize, bound: usize },

    #[error("brute-force ceiling exceeded: {assignments} assignments > ceiling {ceiling}")]
    CeilingExceeded { assignments: u128, ceiling: u128 },

    #[error("malformed: {0}")]
    Malformed(String),

    #[error("move not applicable: {0}")]
    NotApplicable(String),

    #[error("pattern not found: {0}")]
    PatternNotFound(String),

    #[error("precondition failed: automorphism does not preserve the cocycle at ({a}, {b})")]
    PreconditionFailed { a: usize, b: usize },

    #[error("wrong kind: {0}")]
    WrongKind(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
