//! Declarative scenario files: world geometry, gas sources, robot and sensor
//! configuration, inference hyperparameters, and the mission budget.

use serde::{Deserialize, Serialize};

use crate::error::GdmError;
use crate::gas::GmrfHyper;
use crate::geom::{Point2, Rect};
use crate::grid::{Lattice, OccupancyGrid, TAU_FREE_DEFAULT};
use crate::plan::PlannerConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasSource {
    pub position: [f64; 2],
    /// Release rate, ppm/s.
    pub rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wind {
    pub direction: [f64; 2],
    /// m/s; stretches the plumes downwind.
    pub speed: f64,
}

impl Default for Wind {
    fn default() -> Self {
        Wind { direction: [1.0, 0.0], speed: 1.0 }
    }
}

/// Shape parameters of the analytic plume model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlumeModel {
    /// Peak concentration per unit release rate (ppm per ppm/s).
    pub amplitude_per_rate: f64,
    /// Base downwind extent, metres (scaled by wind speed).
    pub sigma_along: f64,
    /// Crosswind spread at the source, metres.
    pub sigma_cross: f64,
    /// Crosswind spread growth per metre downwind.
    pub cross_growth: f64,
    /// Upwind decay scale, metres.
    pub sigma_upwind: f64,
}

impl Default for PlumeModel {
    fn default() -> Self {
        PlumeModel {
            amplitude_per_rate: 0.03,
            sigma_along: 1.8,
            sigma_cross: 0.45,
            cross_growth: 0.12,
            sigma_upwind: 0.35,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobotConfig {
    /// Start pose `[x, y, theta]`.
    pub start: [f64; 3],
    /// m/s.
    pub speed: f64,
    /// Obstacle inflation radius, metres.
    pub inflation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SensorConfig {
    pub gas_rate_hz: f64,
    pub gas_noise_sigma: f64,
    pub lidar_rays: u32,
    pub lidar_max_range: f64,
    pub lidar_noise_sigma: f64,
    pub lidar_rate_hz: f64,
}

impl Default for SensorConfig {
    fn default() -> Self {
        SensorConfig {
            gas_rate_hz: 2.0,
            gas_noise_sigma: 0.25,
            lidar_rays: 180,
            lidar_max_range: 6.0,
            // Idealized ranging: nonzero noise can transiently flip
            // wall-adjacent free cells, breaking coverage monotonicity.
            lidar_noise_sigma: 0.0,
            lidar_rate_hz: 5.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GasFrontierConfig {
    pub tau_gas_min: f64,
    pub percentile: f64,
    /// Observed-knowledge threshold fraction of the prior variance.
    pub kappa: f64,
    pub min_frontier_size: usize,
}

impl Default for GasFrontierConfig {
    fn default() -> Self {
        GasFrontierConfig { tau_gas_min: 2.0, percentile: 10.0, kappa: 0.5, min_frontier_size: 3 }
    }
}

fn default_tau_free() -> f64 {
    TAU_FREE_DEFAULT
}

/// A complete scenario description, loadable from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default = "Scenario::schema_tag")]
    pub schema: String,
    pub name: String,
    /// World extent `[width, height]` in metres, origin at (0, 0).
    pub bounds: [f64; 2],
    pub resolution: f64,
    #[serde(default = "default_tau_free")]
    pub tau_free: f64,
    #[serde(default)]
    pub walls: Vec<Rect>,
    #[serde(default)]
    pub boxes: Vec<Rect>,
    #[serde(default)]
    pub sources: Vec<GasSource>,
    #[serde(default)]
    pub wind: Wind,
    #[serde(default)]
    pub plume: PlumeModel,
    pub robot: RobotConfig,
    #[serde(default)]
    pub sensors: SensorConfig,
    #[serde(default = "GmrfHyper::default")]
    pub gmrf: GmrfHyper,
    #[serde(default)]
    pub gas_frontier: GasFrontierConfig,
    pub budget_s: f64,
    /// Ground-truth concentration above this is "critical" for evaluation.
    #[serde(default = "Scenario::default_z_thresh")]
    pub z_thresh: f64,
    /// Optional fixed goal for single-plan convergence studies.
    #[serde(default)]
    pub convergence_goal: Option<[f64; 2]>,
    /// Optional planner defaults; command-line flags override these.
    #[serde(default)]
    pub planner: Option<PlannerConfig>,
}

impl Scenario {
    fn schema_tag() -> String {
        "gdm.scenario/1".to_string()
    }

    fn default_z_thresh() -> f64 {
        2.5
    }

    pub fn from_json(s: &str) -> Result<Scenario, GdmError> {
        serde_json::from_str(s).map_err(|e| GdmError::Parse(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Scenario, GdmError> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json(&s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario json")
    }

    pub fn obstacles(&self) -> impl Iterator<Item = &Rect> {
        self.walls.iter().chain(self.boxes.iter())
    }

    pub fn start_point(&self) -> Point2 {
        Point2::new(self.robot.start[0], self.robot.start[1])
    }

    /// The occupancy lattice implied by bounds and resolution.
    pub fn lattice(&self) -> Result<Lattice, GdmError> {
        let w = (self.bounds[0] / self.resolution).round() as u32;
        let h = (self.bounds[1] / self.resolution).round() as u32;
        Lattice::new(Point2::new(0.0, 0.0), self.resolution, w, h)
    }

    /// Fresh all-unknown occupancy grid for a mission.
    pub fn blank_grid(&self) -> Result<OccupancyGrid, GdmError> {
        OccupancyGrid::new(self.lattice()?, self.tau_free)
    }

    /// Fully known occupancy grid derived from the scenario geometry: cells
    /// whose center lies in an obstacle are occupied, the rest are free.
    /// Used by single-plan studies that assume a mapped world.
    pub fn ground_truth_grid(&self) -> Result<OccupancyGrid, GdmError> {
        let lattice = self.lattice()?;
        let mut grid = OccupancyGrid::new(lattice, self.tau_free)?;
        for i in 0..grid.lattice().num_cells() {
            let c = grid.lattice().cell_at_index(i);
            let p = grid.lattice().cell_center(c);
            let occupied = self.obstacles().any(|r| r.contains(p));
            grid.set_prob(c, if occupied { crate::grid::P_MAX } else { crate::grid::P_MIN });
        }
        Ok(grid)
    }

    /// Full file-level validation: everything in [`Self::validate_runtime`]
    /// plus checks that only make sense for a stored scenario.
    pub fn validate(&self) -> Vec<String> {
        let mut issues = self.validate_runtime();
        if self.budget_s <= 0.0 {
            issues.push(format!("budget_s must be positive, got {}", self.budget_s));
        }
        issues
    }

    /// Semantic checks required to run a mission. A nonpositive budget is
    /// tolerated here (it yields an empty mission).
    pub fn validate_runtime(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.bounds[0] <= 0.0 || self.bounds[1] <= 0.0 {
            issues.push(format!("bounds must be positive, got {:?}", self.bounds));
        }
        if self.resolution <= 0.0 {
            issues.push(format!("resolution must be positive, got {}", self.resolution));
        }
        if !(self.tau_free > 0.0 && self.tau_free <= 0.5) {
            issues.push(format!("tau_free must lie in (0, 0.5], got {}", self.tau_free));
        }
        if self.robot.speed <= 0.0 {
            issues.push(format!("robot speed must be positive, got {}", self.robot.speed));
        }
        if self.robot.inflation < 0.0 {
            issues.push("robot inflation must be nonnegative".to_string());
        }
        if self.z_thresh <= 0.0 {
            issues.push(format!("z_thresh must be positive, got {}", self.z_thresh));
        }
        let gf = &self.gas_frontier;
        if !(gf.kappa > 0.0 && gf.kappa < 1.0) {
            issues.push(format!("gas_frontier.kappa must lie in (0,1), got {}", gf.kappa));
        }
        if !(0.0..=100.0).contains(&gf.percentile) {
            issues.push(format!("gas_frontier.percentile must lie in [0,100], got {}", gf.percentile));
        }
        if gf.tau_gas_min <= 0.0 {
            issues.push("gas_frontier.tau_gas_min must be positive".to_string());
        }
        if self.gmrf.validate().is_err() {
            issues.push("gmrf hyperparameters must all be positive".to_string());
        }
        let s = &self.sensors;
        for (name, v) in [
            ("sensors.gas_rate_hz", s.gas_rate_hz),
            ("sensors.lidar_max_range", s.lidar_max_range),
            ("sensors.lidar_rate_hz", s.lidar_rate_hz),
        ] {
            if v <= 0.0 {
                issues.push(format!("{name} must be positive, got {v}"));
            }
        }
        if s.gas_noise_sigma < 0.0 || s.lidar_noise_sigma < 0.0 {
            issues.push("sensor noise sigmas must be nonnegative".to_string());
        }
        if s.lidar_rays < 8 {
            issues.push(format!("lidar needs at least 8 rays, got {}", s.lidar_rays));
        }
        if let Some(p) = self.planner {
            if let Err(e) = p.validate() {
                issues.push(format!("planner: {e}"));
            }
        }

        let start = self.start_point();
        let inside = start.x > 0.0
            && start.y > 0.0
            && start.x < self.bounds[0]
            && start.y < self.bounds[1];
        if !inside {
            issues.push(format!("robot start ({}, {}) outside bounds", start.x, start.y));
        }
        for r in self.obstacles() {
            if r.w <= 0.0 || r.h <= 0.0 {
                issues.push(format!("degenerate obstacle rect {r:?}"));
            }
            if r.contains(start) {
                issues.push(format!("robot start inside obstacle {r:?}"));
            } else if inside {
                let dx = (r.x - start.x).max(start.x - (r.x + r.w)).max(0.0);
                let dy = (r.y - start.y).max(start.y - (r.y + r.h)).max(0.0);
                let clearance = dx.hypot(dy);
                if clearance < self.robot.inflation {
                    issues.push(format!(
                        "robot start clears obstacle {r:?} by only {clearance:.3} m (< inflation {})",
                        self.robot.inflation
                    ));
                }
            }
        }
        for src in &self.sources {
            let p = Point2::new(src.position[0], src.position[1]);
            if p.x < 0.0 || p.y < 0.0 || p.x > self.bounds[0] || p.y > self.bounds[1] {
                issues.push(format!("source at ({}, {}) outside bounds", p.x, p.y));
            }
            if src.rate < 0.0 {
                issues.push(format!("source rate must be nonnegative, got {}", src.rate));
            }
        }
        if let Some(goal) = self.convergence_goal {
            let p = Point2::new(goal[0], goal[1]);
            if p.x <= 0.0 || p.y <= 0.0 || p.x >= self.bounds[0] || p.y >= self.bounds[1] {
                issues.push(format!("convergence_goal ({}, {}) outside bounds", p.x, p.y));
            }
        }
        issues
    }
}
