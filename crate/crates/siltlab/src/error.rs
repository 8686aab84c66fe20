//! Library-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid construction data (bad modulus, inadmissible relations, ...).
    #[error("construction error: {0}")]
    Construction(String),

    /// A documented precondition/contract was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A decomposition produced a summand not present in the declared
    /// indecomposable list.
    #[error("incomplete skeleton: {0}")]
    IncompleteSkeleton(String),

    /// Validation of a declared indecomposable list failed.
    #[error("validation error: {0}")]
    Validation(String),

    /// An operation that needs the full module category was invoked on a
    /// restricted (sub-extriangulated) context.
    #[error("unsupported context: {0}")]
    UnsupportedContext(String),

    /// Search bounds were hit and the answer could not be certified either way.
    #[error("indeterminate (bound-limited): {0}")]
    Indeterminate(String),

    /// A theorem-backed cross-check failed, signalling that a search bound was
    /// insufficient (or a genuine inconsistency). Never ignored.
    #[error("hard diagnostic: {0}")]
    Diagnostic(String),

    /// Algebra spec file problems; message carries a line number.
    #[error("parse error: {0}")]
    Parse(String),
}
