//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the numeric kernels and the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// The zero quaternion has no inverse (and no distinguished phase).
    #[error("zero quaternion has no inverse")]
    ZeroQuaternion,

    /// Operand shapes do not agree; the message names the operation.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An operation that requires a non-empty matrix received an empty one.
    #[error("matrix must be non-empty")]
    EmptyMatrix,

    /// The second entry of a Givens pair is zero; the rotation is undefined
    /// and the caller should skip it.
    #[error("generalized Givens pair has zero second entry; skip the rotation")]
    GivensZeroPivot,

    /// A normalized quantity was requested for zero-norm input.
    #[error("zero-norm input: {0}")]
    ZeroNorm(&'static str),

    /// The payload does not fit in the host image.
    #[error("payload needs {required} blocks but the host provides {available}")]
    Capacity { required: usize, available: usize },

    /// A file or argument could not be parsed; the message carries details.
    #[error("format error: {0}")]
    Format(String),

    /// An iteration exhausted its budget without converging.
    #[error("iteration did not converge within {0} sweeps")]
    Convergence(usize),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Helper for shape errors.
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    /// Helper for format errors.
    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
