//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by enumeration, interpolation, and validation routines.
///
/// Counting operations never silently correct a suspicious input: size or
/// type mismatches where a structure constant is *defined* to vanish return
/// `0`, everything else is an error.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A sequence that was required to be a partition is not weakly
    /// decreasing or contains a non-positive part.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A configured desk-scale bound would be exceeded.
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    /// Arguments outside an operation's domain (e.g. `m > n` for a
    /// q-binomial).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Polynomial interpolation produced non-integer coefficients. This
    /// signals a wrong degree bound or wrong counts, never a condition to
    /// paper over.
    #[error("interpolation produced non-integer coefficients: {0}")]
    NonIntegerInterpolant(String),

    /// A held-out validation sample disagreed with an interpolated
    /// polynomial.
    #[error("validation sample mismatch: {0}")]
    ValidationMismatch(String),

    /// A frame handed to the 3x3-square fiber computation is not exact.
    #[error("frame is not exact: {0}")]
    InexactFrame(String),

    /// Two computation paths that must agree (by theorem) disagreed.
    #[error("internal cross-check mismatch: {0}")]
    CrossCheckMismatch(String),

    /// Operation not supported by the chosen Hall algebra backend.
    #[error("unsupported by backend: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
