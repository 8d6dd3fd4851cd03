//! Error type shared by all library operations.

use thiserror::Error;

/// Errors produced by channel generation, model evaluation, and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Vector or matrix dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The effective channel is zero, so no beam direction exists.
    #[error("degenerate channel: {0}")]
    DegenerateChannel(String),

    /// An operation that needs reflecting elements was called with M = 0.
    #[error("no reflecting elements: callers must branch to the no-IRS baseline")]
    EmptyIrs,

    /// An input was identically zero where a phase had to be extracted.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The requested grid enumeration exceeds the size guard.
    #[error("grid too large: {0}")]
    GridTooLarge(String),

    /// A value failed a contract check (e.g. an entry left the unit circle).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Reading or writing a channel fixture failed.
    #[error("fixture I/O at {path}: {reason}")]
    FixtureIo { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
