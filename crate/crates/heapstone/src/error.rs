use thiserror::Error;

/// Errors shared across the crate.
///
/// Emptiness of a heap is NOT an error: it is a legitimate mathematical
/// answer and travels through return values, never through `Err`.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated a precondition (dimension mismatch, foreign group
    /// element, malformed complex, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// Input file or description failed to parse or validate.
    #[error("input error: {0}")]
    Input(String),

    /// The lifting problem falls outside the stable range declared by the
    /// tower; the two compared numbers are reported.
    #[error("stability violation: dim(X \\ A) = {dim_cof} exceeds 2*conn(fib) = {bound}")]
    Stability { dim_cof: isize, bound: isize },

    /// An internal invariant failed. This is a bug or an input outside the
    /// guaranteed range (e.g. corrector rollback exhausted); it is reported
    /// loudly instead of being papered over.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
