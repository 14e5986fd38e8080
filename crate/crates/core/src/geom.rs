//! Planar points, lattice cells, poses, and axis-aligned rectangles.

use serde::{Deserialize, Serialize};

/// A point in world coordinates (metres).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(&self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Integer lattice cell index. Signed so neighbour arithmetic can walk off
/// the edge and be bounds-checked afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    /// The 8 surrounding cells, in a fixed scan order.
    pub fn neighbors8(&self) -> [Cell; 8] {
        let (x, y) = (self.x, self.y);
        [
            Cell::new(x - 1, y - 1),
            Cell::new(x, y - 1),
            Cell::new(x + 1, y - 1),
            Cell::new(x - 1, y),
            Cell::new(x + 1, y),
            Cell::new(x - 1, y + 1),
            Cell::new(x, y + 1),
            Cell::new(x + 1, y + 1),
        ]
    }

    /// The 4 edge-adjacent cells.
    pub fn neighbors4(&self) -> [Cell; 4] {
        let (x, y) = (self.x, self.y);
        [
            Cell::new(x, y - 1),
            Cell::new(x - 1, y),
            Cell::new(x + 1, y),
            Cell::new(x, y + 1),
        ]
    }
}

/// Robot pose: position plus heading (radians, CCW from +x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub position: Point2,
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Pose { position: Point2::new(x, y), theta }
    }
}

/// Axis-aligned rectangle `[x, x+w) x [y, y+h)`, used for obstacles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.x && p.x < self.x + self.w && p.y >= self.y && p.y < self.y + self.h
    }

    /// Entry and exit distances of the ray `origin + t*dir` through the
    /// rectangle, for `t` in `[0, t_max]`. Standard slab test.
    pub fn ray_span(&self, origin: Point2, dir: (f64, f64), t_max: f64) -> Option<(f64, f64)> {
        let (mut t0, mut t1) = (0.0f64, t_max);
        for (o, d, lo, hi) in [
            (origin.x, dir.0, self.x, self.x + self.w),
            (origin.y, dir.1, self.y, self.y + self.h),
        ] {
            if d.abs() < 1e-12 {
                if o < lo || o >= hi {
                    return None;
                }
            } else {
                let (mut a, mut b) = ((lo - o) / d, (hi - o) / d);
                if a > b {
                    std::mem::swap(&mut a, &mut b);
                }
                t0 = t0.max(a);
                t1 = t1.min(b);
                if t0 > t1 {
                    return None;
                }
            }
        }
        Some((t0, t1))
    }

    /// Entry distance of the ray into the rectangle, if any.
    pub fn ray_entry(&self, origin: Point2, dir: (f64, f64), t_max: f64) -> Option<f64> {
        self.ray_span(origin, dir, t_max).map(|(t0, _)| t0)
    }

    /// True if the segment `a..b` passes through the rectangle interior.
    pub fn intersects_segment(&self, a: Point2, b: Point2) -> bool {
        let len = a.dist(b);
        if len < 1e-12 {
            return self.contains(a);
        }
        let dir = ((b.x - a.x) / len, (b.y - a.y) / len);
        match self.ray_entry(a, dir, len) {
            Some(t) => t <= len,
            None => false,
        }
    }
}
