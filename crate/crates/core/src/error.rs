use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the simulator, calibration and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration or parameter violates one of its invariants.
    #[error("invariant violated for `{field}`: {detail}")]
    Invariant { field: &'static str, detail: String },

    /// Array dimensions disagree between inputs.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Fewer distinct scenes than unknowns in a per-pixel fit.
    #[error("underdetermined fit: need at least 2 distinct scene intensities, got {0}")]
    Underdetermined(usize),

    #[error("spike stream has no frames")]
    EmptyStream,

    #[error("histogram has no intervals")]
    EmptyHistogram,

    #[error("window of {window} frames centered at {center} does not fit in {frames} frames")]
    WindowOutOfBounds {
        window: usize,
        center: usize,
        frames: usize,
    },

    #[error("parameter file line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("worker pool: {0}")]
    Pool(String),
}

/// Typed decoding failures for the binary containers.
#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("bad magic: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },

    #[error("unsupported format version {found} (expected {expected})")]
    Version { expected: u16, found: u16 },

    #[error("truncated input: needed {needed} bytes, have {available}")]
    Truncated { needed: usize, available: usize },

    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(usize),

    #[error("invalid header: {0}")]
    Header(String),

    #[error("invalid value {value} at frame {frame}, pixel {pixel}")]
    Value { frame: usize, pixel: usize, value: f32 },
}
