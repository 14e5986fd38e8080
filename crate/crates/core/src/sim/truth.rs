//! Analytic ground-truth gas field: a superposition of wind-stretched
//! anisotropic Gaussian plumes, zero inside obstacles and zero behind them
//! (binary line-of-sight shadowing from each source). The field is steady;
//! the time argument exists for interface symmetry with transient models.

use crate::geom::{Point2, Rect};
use crate::sim::scenario::Scenario;

struct Plume {
    source: Point2,
    amplitude: f64,
    wind_dir: (f64, f64),
    sigma_along: f64,
    sigma_cross: f64,
    cross_growth: f64,
    sigma_upwind: f64,
}

/// Deterministic evaluator for the true concentration field.
pub struct GroundTruthField {
    plumes: Vec<Plume>,
    obstacles: Vec<Rect>,
    bounds: [f64; 2],
    pub z_thresh: f64,
}

impl GroundTruthField {
    pub fn from_scenario(sc: &Scenario) -> Self {
        let norm = (sc.wind.direction[0].hypot(sc.wind.direction[1])).max(1e-9);
        let dir = (sc.wind.direction[0] / norm, sc.wind.direction[1] / norm);
        let stretch = 1.0 + sc.wind.speed;
        let plumes = sc
            .sources
            .iter()
            .map(|src| Plume {
                source: Point2::new(src.position[0], src.position[1]),
                amplitude: sc.plume.amplitude_per_rate * src.rate,
                wind_dir: dir,
                sigma_along: sc.plume.sigma_along * stretch,
                sigma_cross: sc.plume.sigma_cross,
                cross_growth: sc.plume.cross_growth,
                sigma_upwind: sc.plume.sigma_upwind,
            })
            .collect();
        GroundTruthField {
            plumes,
            obstacles: sc.obstacles().copied().collect(),
            bounds: sc.bounds,
            z_thresh: sc.z_thresh,
        }
    }

    /// True when the point lies inside the world and outside every obstacle.
    pub fn is_free(&self, p: Point2) -> bool {
        p.x >= 0.0
            && p.y >= 0.0
            && p.x < self.bounds[0]
            && p.y < self.bounds[1]
            && !self.obstacles.iter().any(|r| r.contains(p))
    }

    fn shadowed(&self, source: Point2, p: Point2) -> bool {
        self.obstacles.iter().any(|r| r.intersects_segment(source, p))
    }

    /// Concentration in ppm at `p`. The field is time-invariant; `_time` is
    /// accepted for interface parity.
    pub fn concentration(&self, p: Point2, _time: f64) -> f64 {
        if !self.is_free(p) {
            return 0.0;
        }
        let mut total = 0.0;
        for plume in &self.plumes {
            if plume.amplitude <= 0.0 {
                continue;
            }
            if self.shadowed(plume.source, p) {
                continue;
            }
            let dx = p.x - plume.source.x;
            let dy = p.y - plume.source.y;
            let along = dx * plume.wind_dir.0 + dy * plume.wind_dir.1;
            let cross = -dx * plume.wind_dir.1 + dy * plume.wind_dir.0;
            let downwind = along.max(0.0);
            let upwind = (-along).max(0.0);
            let sigma_c = plume.sigma_cross + plume.cross_growth * downwind;
            let exponent = -0.5 * (downwind / plume.sigma_along).powi(2)
                - 0.5 * (cross / sigma_c).powi(2)
                - 0.5 * (upwind / plume.sigma_upwind).powi(2);
            total += plume.amplitude * exponent.exp();
        }
        total
    }
}
