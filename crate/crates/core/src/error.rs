//! Crate-wide error type.

use std::fmt;

use crate::geom::{Cell, Point2};

/// Errors surfaced by the mapping, inference, planning, and simulation layers.
#[derive(Debug, Clone, PartialEq)]
pub enum GdmError {
    /// A world point fell outside the lattice bounds.
    OutOfBounds { point: Point2 },
    /// An operation required a cell state it did not find (e.g. an
    /// observation placed on an occupied or unknown cell).
    BadCell { cell: Cell, reason: &'static str },
    /// Invalid parameter or configuration value.
    InvalidParameter { name: &'static str, value: f64 },
    /// The iterative GMRF solve did not reach the residual tolerance.
    SolverDiverged { residual: f64, iterations: usize },
    /// The dense oracle was asked for an instance above its size cap.
    OracleTooLarge { cells: usize, cap: usize },
    /// A metric was requested on an empty domain.
    EmptyDomain { what: &'static str },
    /// Sampling could not produce any state.
    NoEligibleCells,
    /// The planner has no candidate trajectory to select.
    NoTrajectory,
    /// Scenario file failed validation.
    Scenario(String),
    /// Underlying I/O failure, carried as text to keep the type clonable.
    Io(String),
    /// Malformed artifact (scenario JSON, PGM snapshot, ...).
    Parse(String),
}

impl fmt::Display for GdmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GdmError::OutOfBounds { point } => {
                write!(f, "point ({}, {}) outside lattice bounds", point.x, point.y)
            }
            GdmError::BadCell { cell, reason } => {
                write!(f, "cell ({}, {}): {}", cell.x, cell.y, reason)
            }
            GdmError::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            GdmError::SolverDiverged { residual, iterations } => write!(
                f,
                "iterative solve stopped at residual {residual:.3e} after {iterations} iterations"
            ),
            GdmError::OracleTooLarge { cells, cap } => {
                write!(f, "dense oracle refused: {cells} cells exceeds cap {cap}")
            }
            GdmError::EmptyDomain { what } => write!(f, "empty domain: {what}"),
            GdmError::NoEligibleCells => write!(f, "no eligible cells to sample"),
            GdmError::NoTrajectory => write!(f, "no candidate trajectory"),
            GdmError::Scenario(msg) => write!(f, "scenario: {msg}"),
            GdmError::Io(msg) => write!(f, "io: {msg}"),
            GdmError::Parse(msg) => write!(f, "parse: {msg}"),
        }
    }
}

impl std::error::Error for GdmError {}

impl From<std::io::Error> for GdmError {
    fn from(e: std::io::Error) -> Self {
        GdmError::Io(e.to_string())
    }
}
