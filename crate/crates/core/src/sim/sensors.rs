//! Simulated sensing: planar LiDAR against the scenario's rectangle world
//! and point gas concentration sampling, both with clamped Gaussian noise.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::geom::{Point2, Pose};
use crate::grid::RangeReading;
use crate::sim::scenario::Scenario;
use crate::sim::truth::GroundTruthField;

/// Distance along `dir` at which the ray leaves the world rectangle.
fn boundary_exit(origin: Point2, dir: (f64, f64), bounds: [f64; 2]) -> f64 {
    let mut t = f64::INFINITY;
    if dir.0 > 1e-12 {
        t = t.min((bounds[0] - origin.x) / dir.0);
    } else if dir.0 < -1e-12 {
        t = t.min(-origin.x / dir.0);
    }
    if dir.1 > 1e-12 {
        t = t.min((bounds[1] - origin.y) / dir.1);
    } else if dir.1 < -1e-12 {
        t = t.min(-origin.y / dir.1);
    }
    t.max(0.0)
}

/// One full sweep of evenly spaced rays. Each return is the nearest obstacle
/// or world-boundary distance plus clamped Gaussian noise; `max_range` when
/// nothing is hit within range.
pub fn simulate_lidar<R: Rng>(
    pose: Pose,
    scenario: &Scenario,
    rng: &mut R,
) -> Vec<RangeReading> {
    let s = &scenario.sensors;
    let noise = Normal::new(0.0, s.lidar_noise_sigma.max(1e-12)).expect("noise sigma");
    // A beam whose chord through a rectangle is under half a cell grazed a
    // corner; treating it as a hit would stamp occupancy into the free cell
    // next to the corner.
    let min_chord = scenario.resolution / 2.0;
    let mut out = Vec::with_capacity(s.lidar_rays as usize);
    for i in 0..s.lidar_rays {
        let bearing = f64::from(i) * std::f64::consts::TAU / f64::from(s.lidar_rays);
        let ang = pose.theta + bearing;
        let dir = (ang.cos(), ang.sin());
        let mut dist = boundary_exit(pose.position, dir, scenario.bounds);
        for rect in scenario.obstacles() {
            if let Some((t0, t1)) = rect.ray_span(pose.position, dir, dist) {
                if t1 - t0 >= min_chord {
                    dist = dist.min(t0);
                }
            }
        }
        let range = if dist >= s.lidar_max_range {
            s.lidar_max_range
        } else {
            (dist + noise.sample(rng)).clamp(0.0, s.lidar_max_range)
        };
        out.push(RangeReading { bearing, range });
    }
    out
}

/// Noisy nonnegative gas sample at a point.
pub fn sample_gas<R: Rng>(
    field: &GroundTruthField,
    position: Point2,
    time: f64,
    noise_sigma: f64,
    rng: &mut R,
) -> f64 {
    let truth = field.concentration(position, time);
    if noise_sigma <= 0.0 {
        return truth;
    }
    let noise = Normal::new(0.0, noise_sigma).expect("noise sigma");
    (truth + noise.sample(rng)).max(0.0)
}
