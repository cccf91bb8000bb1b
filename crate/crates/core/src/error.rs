//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by scenario validation, channel construction and the
/// optimization schemes.
#[derive(Debug, Error)]
pub enum Error {
    /// Scenario or sweep configuration violates an invariant.
    #[error("configuration error: {0}")]
    Config(String),

    /// A geometric input is degenerate (e.g. a position at the origin).
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// A channel or beamformer vector is degenerate (e.g. zero cascade).
    #[error("degenerate channel: {0}")]
    DegenerateChannel(String),

    /// Matrix/vector dimensions do not match.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A convex subproblem is infeasible as specified.
    #[error("infeasible subproblem: {0}")]
    Infeasible(String),

    /// An optimizer failed to make progress.
    #[error("solver failure: {0}")]
    Solver(String),

    /// An oracle was asked for more work than its desk-scale cap allows.
    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
