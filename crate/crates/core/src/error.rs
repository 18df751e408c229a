use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The variants map onto the CLI exit codes: everything except
/// [`Error::Resource`] is a validation/domain failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The graph data is malformed (missing pair, wrong length, not a bijection).
    #[error("structural error: {0}")]
    Structural(String),
    /// The permutation family violates the cubic condition.
    #[error("cubic condition violated at {} edge triple(s)", .0.len())]
    Cubic(Vec<crate::graph::CubicViolation>),
    /// A degree precondition does not hold.
    #[error("degree error: {0}")]
    Degree(String),
    /// A number-theoretic precondition does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size cap would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A term does not match any closed-form averaging shape.
    #[error("shape error: {0}")]
    Shape(String),
    /// The requested scaling is irrational in exact mode.
    #[error("mode error: {0}")]
    Mode(String),
    /// Elements over different graphs were combined.
    #[error("graph mismatch")]
    GraphMismatch,
    /// The operation requires a property the graph lacks.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
