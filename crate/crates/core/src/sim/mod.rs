//! Simulation: declarative scenarios, the analytic ground-truth gas field,
//! simulated sensing, and the mission loop.

pub mod mission;
pub mod scenario;
pub mod sensors;
pub mod truth;

pub use mission::{run_mission, Mission, MissionRun, MissionState, StepRecord};
pub use scenario::Scenario;
pub use truth::GroundTruthField;
