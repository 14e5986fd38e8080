//! Active gas distribution mapping for a simulated planar robot.
//!
//! The crate couples an occupancy grid, a lattice GMRF gas posterior, frontier
//! detection (occupancy and gas), a UCB information field, and a multi-goal
//! informed-tree planner into a closed sense-plan-act mission loop, plus the
//! evaluation machinery (critical-region RMSE/entropy/completeness metrics and
//! seeded Monte Carlo campaigns) used to compare planner configurations.

pub mod error;
pub mod frontier;
pub mod gas;
pub mod geom;
pub mod grid;
pub mod info;
pub mod metrics;
pub mod plan;
pub mod rng;
pub mod sim;

pub use error::GdmError;
pub use frontier::{Frontier, FrontierKind, GasFrontierStore, GasThreshold, GoalPolicy};
pub use gas::{GasMap, GasObservation, GasPosterior, GmrfHyper};
pub use geom::{Cell, Point2, Pose};
pub use grid::{KnownFreeSet, Lattice, OccupancyGrid};
pub use info::{InfoField, SampleBatch};
pub use plan::{CostMode, GoalRegion, HeuristicMode, PlannerConfig, SearchTree, Trajectory};
pub use sim::{MissionRun, Scenario};
