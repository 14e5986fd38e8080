//! Occupancy lattice: cell indexing, log-odds scan integration, known-free
//! space, obstacle inflation, and segment queries.
//!
//! Cells follow the half-open convention `[i*res, (i+1)*res)`, so every
//! interior world point maps to exactly one cell. All planning-facing
//! collision queries reduce to [`OccupancyGrid::is_segment_known_free`]:
//! a segment is traversable iff every cell it touches is known free.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::GdmError;
use crate::geom::{Cell, Point2, Pose};

/// Log-odds increment applied to cells a ray passes through.
pub const L_FREE: f64 = -0.4;
/// Log-odds increment applied to the cell a ray terminates in.
pub const L_OCC: f64 = 0.85;
/// Occupancy probability clamp.
pub const P_MIN: f64 = 0.02;
pub const P_MAX: f64 = 0.98;
/// Default free threshold on occupancy probability.
pub const TAU_FREE_DEFAULT: f64 = 0.25;
/// Probability at or above which a cell counts as occupied (for inflation
/// and frontier boundaries). One ray hit from the unknown prior crosses it.
pub const TAU_OCC_DEFAULT: f64 = 0.65;

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

fn sigmoid(l: f64) -> f64 {
    1.0 / (1.0 + (-l).exp())
}

/// Discrete cell state derived from the occupancy belief.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellState {
    Free,
    Occupied,
    Unknown,
}

/// Fixed world-aligned lattice: origin, resolution and cell counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    origin: Point2,
    resolution: f64,
    width: u32,
    height: u32,
}

impl Lattice {
    pub fn new(origin: Point2, resolution: f64, width: u32, height: u32) -> Result<Self, GdmError> {
        if !(resolution > 0.0) {
            return Err(GdmError::InvalidParameter { name: "resolution", value: resolution });
        }
        if width == 0 || height == 0 {
            return Err(GdmError::InvalidParameter {
                name: "lattice size",
                value: f64::from(width.min(height)),
            });
        }
        Ok(Lattice { origin, resolution, width, height })
    }

    pub fn origin(&self) -> Point2 {
        self.origin
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn num_cells(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn cell_area(&self) -> f64 {
        self.resolution * self.resolution
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as u32) < self.width && (c.y as u32) < self.height
    }

    /// Row-major storage index of an in-bounds cell.
    pub fn index(&self, c: Cell) -> usize {
        debug_assert!(self.contains_cell(c));
        c.y as usize * self.width as usize + c.x as usize
    }

    pub fn cell_at_index(&self, idx: usize) -> Cell {
        let w = self.width as usize;
        Cell::new((idx % w) as i32, (idx / w) as i32)
    }

    /// The unique cell containing `p` under the half-open convention.
    ///
    /// Float division can land a boundary point one cell low or high;
    /// the result is corrected against the defining inequality
    /// `i*res <= d < (i+1)*res`.
    pub fn cell_of(&self, p: Point2) -> Result<Cell, GdmError> {
        let axis = |d: f64| -> i64 {
            let mut i = (d / self.resolution).floor() as i64;
            if (i + 1) as f64 * self.resolution <= d {
                i += 1;
            }
            if (i as f64) * self.resolution > d {
                i -= 1;
            }
            i
        };
        let ix = axis(p.x - self.origin.x);
        let iy = axis(p.y - self.origin.y);
        if ix < 0 || iy < 0 || ix >= i64::from(self.width) || iy >= i64::from(self.height) {
            return Err(GdmError::OutOfBounds { point: p });
        }
        Ok(Cell::new(ix as i32, iy as i32))
    }

    pub fn cell_center(&self, c: Cell) -> Point2 {
        Point2::new(
            self.origin.x + (f64::from(c.x) + 0.5) * self.resolution,
            self.origin.y + (f64::from(c.y) + 0.5) * self.resolution,
        )
    }

    /// Points at spacing <= `step` along the segment `a..b`, both endpoints
    /// included. A degenerate segment yields the single point `a`.
    pub fn segment_points(a: Point2, b: Point2, step: f64) -> Vec<Point2> {
        debug_assert!(step > 0.0);
        let len = a.dist(b);
        if len == 0.0 {
            return vec![a];
        }
        let n = (len / step).ceil() as usize;
        (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                Point2::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
            })
            .collect()
    }

    /// Cells traversed by the segment `a..b`, sampled at spacing <= `step`
    /// and deduplicated consecutively, in traversal order. Out-of-bounds
    /// sample points are skipped.
    pub fn segment_cells(&self, a: Point2, b: Point2, step: f64) -> Vec<Cell> {
        let mut out: Vec<Cell> = Vec::new();
        for p in Self::segment_points(a, b, step) {
            if let Ok(c) = self.cell_of(p) {
                if out.last() != Some(&c) {
                    out.push(c);
                }
            }
        }
        out
    }
}

/// Set of known-free cells with its Lebesgue measure.
#[derive(Debug, Clone)]
pub struct KnownFreeSet {
    cells: Vec<Cell>,
    measure: f64,
    resolution: f64,
}

impl KnownFreeSet {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Area in m^2: cell count times cell area.
    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }
}

/// One simulated range return: bearing relative to the pose heading plus
/// measured range.
#[derive(Debug, Clone, Copy)]
pub struct RangeReading {
    pub bearing: f64,
    pub range: f64,
}

/// Per-cell occupancy belief on a [`Lattice`], stored as log-odds.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    lattice: Lattice,
    log_odds: Vec<f64>,
    tau_free: f64,
    tau_occ: f64,
}

impl OccupancyGrid {
    /// All cells start at the unknown prior p = 0.5.
    pub fn new(lattice: Lattice, tau_free: f64) -> Result<Self, GdmError> {
        if !(tau_free > 0.0 && tau_free <= 0.5) {
            return Err(GdmError::InvalidParameter { name: "tau_free", value: tau_free });
        }
        let n = lattice.num_cells();
        Ok(OccupancyGrid { lattice, log_odds: vec![0.0; n], tau_free, tau_occ: TAU_OCC_DEFAULT })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn tau_free(&self) -> f64 {
        self.tau_free
    }

    pub fn prob(&self, c: Cell) -> f64 {
        sigmoid(self.log_odds[self.lattice.index(c)])
    }

    pub fn set_prob(&mut self, c: Cell, p: f64) {
        let idx = self.lattice.index(c);
        self.log_odds[idx] = logit(p.clamp(P_MIN, P_MAX));
    }

    pub fn state(&self, c: Cell) -> CellState {
        let p = self.prob(c);
        if p <= self.tau_free {
            CellState::Free
        } else if p >= self.tau_occ {
            CellState::Occupied
        } else {
            CellState::Unknown
        }
    }

    pub fn is_known_free(&self, c: Cell) -> bool {
        self.lattice.contains_cell(c) && self.prob(c) <= self.tau_free
    }

    pub fn is_occupied(&self, c: Cell) -> bool {
        self.lattice.contains_cell(c) && self.prob(c) >= self.tau_occ
    }

    /// All cells with occupancy probability at or below `tau_free`.
    pub fn known_free(&self) -> KnownFreeSet {
        let tau = logit(self.tau_free);
        let cells: Vec<Cell> = (0..self.lattice.num_cells())
            .filter(|&i| self.log_odds[i] <= tau + 1e-12)
            .map(|i| self.lattice.cell_at_index(i))
            .collect();
        let measure = cells.len() as f64 * self.lattice.cell_area();
        KnownFreeSet { cells, measure, resolution: self.lattice.resolution() }
    }

    /// Integrate one scan with the inverse sensor model: cells along each ray
    /// move toward free, the terminating cell (if the ray hit something short
    /// of `max_range`) moves toward occupied. Probabilities stay clamped.
    pub fn integrate_scan(
        &mut self,
        pose: Pose,
        readings: &[RangeReading],
        max_range: f64,
    ) -> Result<(), GdmError> {
        self.lattice.cell_of(pose.position)?;
        let step = self.lattice.resolution() / 2.0;
        let clamp_lo = logit(P_MIN);
        let clamp_hi = logit(P_MAX);
        for r in readings {
            let range = r.range.clamp(0.0, max_range);
            let ang = pose.theta + r.bearing;
            let dir = (ang.cos(), ang.sin());
            let end = Point2::new(
                pose.position.x + range * dir.0,
                pose.position.y + range * dir.1,
            );
            // A return within half a cell of max_range is treated as a miss.
            let hit = range < max_range - self.lattice.resolution() / 2.0;
            let cells = self.lattice.segment_cells(pose.position, end, step);
            // The measured range places the surface at the endpoint; the
            // occupied mass goes a quarter cell past it along the ray so a
            // return from a cell-aligned face lands inside the obstacle.
            let hit_cell = if hit {
                let nudge = self.lattice.resolution() / 4.0;
                let inside = Point2::new(end.x + nudge * dir.0, end.y + nudge * dir.1);
                self.lattice.cell_of(inside).ok().or_else(|| cells.last().copied())
            } else {
                None
            };
            for c in &cells {
                if Some(*c) == hit_cell {
                    continue;
                }
                let idx = self.lattice.index(*c);
                self.log_odds[idx] = (self.log_odds[idx] + L_FREE).clamp(clamp_lo, clamp_hi);
            }
            if let Some(c) = hit_cell {
                let idx = self.lattice.index(c);
                self.log_odds[idx] = (self.log_odds[idx] + L_OCC).clamp(clamp_lo, clamp_hi);
            }
        }
        Ok(())
    }

    /// Grow every occupied cell into a disc: any cell whose center lies
    /// within `radius` of an occupied cell center becomes occupied. Other
    /// cells (free or unknown) keep their belief.
    pub fn inflate(&self, radius: f64) -> Result<OccupancyGrid, GdmError> {
        if radius < 0.0 {
            return Err(GdmError::InvalidParameter { name: "inflation radius", value: radius });
        }
        let mut out = self.clone();
        if radius == 0.0 {
            return Ok(out);
        }
        let res = self.lattice.resolution();
        let reach = (radius / res).floor() as i32;
        let occupied_lo = logit(P_MAX) - 1e-12;
        let r2 = radius * radius;
        for idx in 0..self.lattice.num_cells() {
            if sigmoid(self.log_odds[idx]) < self.tau_occ {
                continue;
            }
            let c = self.lattice.cell_at_index(idx);
            for dy in -reach..=reach {
                for dx in -reach..=reach {
                    let d2 = (f64::from(dx) * res).powi(2) + (f64::from(dy) * res).powi(2);
                    if d2 > r2 + 1e-12 {
                        continue;
                    }
                    let n = Cell::new(c.x + dx, c.y + dy);
                    if !self.lattice.contains_cell(n) {
                        continue;
                    }
                    let nidx = self.lattice.index(n);
                    if out.log_odds[nidx] < occupied_lo {
                        out.log_odds[nidx] = logit(P_MAX);
                    }
                }
            }
        }
        Ok(out)
    }

    /// True iff every cell touched by the segment is known free. Segments
    /// leaving the lattice are not free.
    pub fn is_segment_known_free(&self, a: Point2, b: Point2) -> bool {
        let step = self.lattice.resolution() / 2.0;
        for p in Lattice::segment_points(a, b, step) {
            match self.lattice.cell_of(p) {
                Ok(c) => {
                    if !self.is_known_free(c) {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }

    /// Plain-text PGM (P2) snapshot, probabilities quantized to 1/10000.
    /// Rows are written from y = 0 upward.
    pub fn to_pgm(&self) -> String {
        let w = self.lattice.width as usize;
        let h = self.lattice.height as usize;
        let mut s = String::new();
        s.push_str("P2\n# gdm.occupancy/1\n");
        let _ = writeln!(s, "{w} {h}");
        s.push_str("10000\n");
        for y in 0..h {
            let mut row = String::new();
            for x in 0..w {
                let p = sigmoid(self.log_odds[y * w + x]);
                if x > 0 {
                    row.push(' ');
                }
                let _ = write!(row, "{}", (p * 10000.0).round() as u32);
            }
            s.push_str(&row);
            s.push('\n');
        }
        s
    }

    /// JSON sidecar describing the PGM snapshot.
    pub fn sidecar_json(&self) -> String {
        format!(
            "{{\"schema\":\"gdm.occupancy-meta/1\",\"origin\":[{},{}],\"resolution\":{},\"tau_free\":{},\"width\":{},\"height\":{}}}",
            self.lattice.origin.x,
            self.lattice.origin.y,
            self.lattice.resolution,
            self.tau_free,
            self.lattice.width,
            self.lattice.height
        )
    }

    /// Rebuild a grid from a P2 snapshot and its sidecar.
    pub fn from_pgm(pgm: &str, sidecar: &str) -> Result<OccupancyGrid, GdmError> {
        let meta: serde_json::Value =
            serde_json::from_str(sidecar).map_err(|e| GdmError::Parse(e.to_string()))?;
        let origin = Point2::new(
            meta["origin"][0].as_f64().ok_or_else(|| GdmError::Parse("origin".into()))?,
            meta["origin"][1].as_f64().ok_or_else(|| GdmError::Parse("origin".into()))?,
        );
        let resolution =
            meta["resolution"].as_f64().ok_or_else(|| GdmError::Parse("resolution".into()))?;
        let tau_free =
            meta["tau_free"].as_f64().ok_or_else(|| GdmError::Parse("tau_free".into()))?;

        let mut tokens = pgm.lines().filter(|l| !l.starts_with('#')).flat_map(str::split_whitespace);
        if tokens.next() != Some("P2") {
            return Err(GdmError::Parse("expected P2 magic".into()));
        }
        let mut next_num = |what: &str| -> Result<u64, GdmError> {
            tokens
                .next()
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| GdmError::Parse(format!("bad PGM token: {what}")))
        };
        let w = next_num("width")? as u32;
        let h = next_num("height")? as u32;
        let maxval = next_num("maxval")?;
        if maxval != 10000 {
            return Err(GdmError::Parse(format!("unsupported maxval {maxval}")));
        }
        let lattice = Lattice::new(origin, resolution, w, h)?;
        let mut grid = OccupancyGrid::new(lattice, tau_free)?;
        for i in 0..grid.lattice.num_cells() {
            let v = next_num("pixel")?;
            grid.log_odds[i] = logit((v as f64 / 10000.0).clamp(P_MIN, P_MAX));
        }
        Ok(grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(w: u32, h: u32, res: f64) -> Lattice {
        Lattice::new(Point2::new(0.0, 0.0), res, w, h).unwrap()
    }

    fn open_grid(w: u32, h: u32, res: f64) -> OccupancyGrid {
        let mut g = OccupancyGrid::new(lattice(w, h, res), TAU_FREE_DEFAULT).unwrap();
        for i in 0..g.lattice.num_cells() {
            let c = g.lattice.cell_at_index(i);
            g.set_prob(c, P_MIN);
        }
        g
    }

    #[test]
    fn cell_of_first_cell() {
        let l = lattice(10, 10, 0.1);
        assert_eq!(l.cell_of(Point2::new(0.05, 0.05)).unwrap(), Cell::new(0, 0));
    }

    #[test]
    fn cell_of_half_open_boundary() {
        let l = lattice(20, 20, 0.1);
        assert_eq!(l.cell_of(Point2::new(1.00, 0.35)).unwrap(), Cell::new(10, 3));
    }

    #[test]
    fn cell_of_out_of_bounds() {
        let l = lattice(10, 10, 0.1);
        assert!(matches!(
            l.cell_of(Point2::new(-0.01, 0.0)),
            Err(GdmError::OutOfBounds { .. })
        ));
    }

    #[test]
    fn cell_roundtrip_interior_points() {
        let l = lattice(37, 23, 0.07);
        for c in [Cell::new(0, 0), Cell::new(36, 22), Cell::new(17, 5)] {
            assert_eq!(l.cell_of(l.cell_center(c)).unwrap(), c);
        }
    }

    #[test]
    fn known_free_of_unknown_grid_is_empty() {
        let g = OccupancyGrid::new(lattice(10, 10, 0.1), TAU_FREE_DEFAULT).unwrap();
        assert!(g.known_free().is_empty());
    }

    #[test]
    fn known_free_singleton() {
        let mut g = OccupancyGrid::new(lattice(10, 10, 0.1), TAU_FREE_DEFAULT).unwrap();
        g.set_prob(Cell::new(3, 4), 0.1);
        let kf = g.known_free();
        assert_eq!(kf.cells(), &[Cell::new(3, 4)]);
    }

    #[test]
    fn known_free_full_grid_measure() {
        let g = open_grid(10, 10, 0.1);
        let kf = g.known_free();
        assert_eq!(kf.len(), 100);
        assert!((kf.measure() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn known_free_monotone_in_tau() {
        let mut g = OccupancyGrid::new(lattice(8, 8, 0.1), 0.2).unwrap();
        for i in 0..64 {
            let c = g.lattice.cell_at_index(i);
            g.set_prob(c, 0.02 + 0.9 * (i as f64 / 64.0));
        }
        let n_low = g.known_free().len();
        g.tau_free = 0.4;
        let n_high = g.known_free().len();
        assert!(n_high >= n_low);
    }

    #[test]
    fn scan_in_empty_room_clears_cells() {
        let mut g = OccupancyGrid::new(lattice(21, 21, 0.1), TAU_FREE_DEFAULT).unwrap();
        let pose = Pose::new(1.05, 1.05, 0.0);
        let readings: Vec<RangeReading> = (0..360)
            .map(|i| RangeReading {
                bearing: f64::from(i) * std::f64::consts::TAU / 360.0,
                range: 0.8,
            })
            .collect();
        // Two passes drive probabilities below tau_free.
        for _ in 0..3 {
            g.integrate_scan(pose, &readings, 0.8).unwrap();
        }
        let kf = g.known_free();
        assert!(kf.len() > 150, "cleared {} cells", kf.len());
        assert!(g.is_known_free(g.lattice.cell_of(pose.position).unwrap()));
    }

    #[test]
    fn scan_marks_wall_cell_occupied() {
        let mut g = OccupancyGrid::new(lattice(21, 21, 0.1), TAU_FREE_DEFAULT).unwrap();
        let pose = Pose::new(0.55, 1.05, 0.0);
        // One ray straight +x hitting a wall at range 1.0 (max_range 2.0).
        let readings = [RangeReading { bearing: 0.0, range: 1.0 }];
        g.integrate_scan(pose, &readings, 2.0).unwrap();
        let hit = g.lattice.cell_of(Point2::new(1.55, 1.05)).unwrap();
        assert!(g.prob(hit) > 0.5);
        let on_ray = g.lattice.cell_of(Point2::new(1.05, 1.05)).unwrap();
        assert!(g.prob(on_ray) < 0.5);
    }

    #[test]
    fn repeated_scans_converge_to_clamps() {
        let mut g = OccupancyGrid::new(lattice(21, 21, 0.1), TAU_FREE_DEFAULT).unwrap();
        let pose = Pose::new(0.55, 1.05, 0.0);
        let readings = [RangeReading { bearing: 0.0, range: 1.0 }];
        let hit = g.lattice.cell_of(Point2::new(1.55, 1.05)).unwrap();
        let mid = g.lattice.cell_of(Point2::new(1.05, 1.05)).unwrap();
        let mut last_hit = 0.5;
        let mut last_mid = 0.5;
        for _ in 0..40 {
            g.integrate_scan(pose, &readings, 2.0).unwrap();
            let (ph, pm) = (g.prob(hit), g.prob(mid));
            assert!(ph >= last_hit - 1e-12 && pm <= last_mid + 1e-12);
            last_hit = ph;
            last_mid = pm;
        }
        assert!((last_hit - P_MAX).abs() < 1e-9);
        assert!((last_mid - P_MIN).abs() < 1e-9);
        for i in 0..g.lattice.num_cells() {
            let p = sigmoid(g.log_odds[i]);
            assert!((P_MIN..=P_MAX).contains(&p));
        }
    }

    #[test]
    fn inflate_zero_radius_is_identity() {
        let mut g = open_grid(10, 10, 0.1);
        g.set_prob(Cell::new(5, 5), P_MAX);
        let out = g.inflate(0.0).unwrap();
        assert_eq!(out, g);
    }

    #[test]
    fn inflate_single_cell_disc_13() {
        let mut g = open_grid(11, 11, 0.1);
        g.set_prob(Cell::new(5, 5), P_MAX);
        let out = g.inflate(0.2).unwrap();
        let occupied = (0..out.lattice.num_cells())
            .filter(|&i| out.is_occupied(out.lattice.cell_at_index(i)))
            .count();
        assert_eq!(occupied, 13);
    }

    #[test]
    fn inflate_two_cells_is_union_of_discs() {
        let mut g = open_grid(15, 15, 0.1);
        g.set_prob(Cell::new(5, 5), P_MAX);
        g.set_prob(Cell::new(6, 5), P_MAX);
        let out = g.inflate(0.2).unwrap();
        // Oracle: union of the two center-distance discs.
        let res = 0.1;
        for i in 0..out.lattice.num_cells() {
            let c = out.lattice.cell_at_index(i);
            let d_a = ((f64::from(c.x - 5) * res).powi(2) + (f64::from(c.y - 5) * res).powi(2)).sqrt();
            let d_b = ((f64::from(c.x - 6) * res).powi(2) + (f64::from(c.y - 5) * res).powi(2)).sqrt();
            let expect = d_a <= 0.2 + 1e-12 || d_b <= 0.2 + 1e-12;
            assert_eq!(out.is_occupied(c), expect, "cell {c:?}");
        }
    }

    #[test]
    fn inflate_idempotent_on_occupancy() {
        let mut g = open_grid(15, 15, 0.1);
        g.set_prob(Cell::new(7, 7), P_MAX);
        let once = g.inflate(0.2).unwrap();
        let again = once.inflate(0.0).unwrap();
        assert_eq!(once, again);
        // Extensive: every occupied cell stays occupied.
        for i in 0..g.lattice.num_cells() {
            let c = g.lattice.cell_at_index(i);
            if g.is_occupied(c) {
                assert!(once.is_occupied(c));
            }
        }
    }

    #[test]
    fn segment_degenerate_is_single_point() {
        let p = Point2::new(0.3, 0.4);
        assert_eq!(Lattice::segment_points(p, p, 0.05), vec![p]);
    }

    #[test]
    fn segment_axis_aligned_point_count() {
        let pts = Lattice::segment_points(Point2::new(0.0, 0.5), Point2::new(1.0, 0.5), 0.05);
        assert_eq!(pts.len(), 21);
    }

    #[test]
    fn segment_cells_form_8_connected_chain() {
        let l = lattice(40, 40, 0.1);
        let cells = l.segment_cells(Point2::new(0.15, 0.15), Point2::new(3.05, 2.15), 0.05);
        for w in cells.windows(2) {
            let (dx, dy) = ((w[1].x - w[0].x).abs(), (w[1].y - w[0].y).abs());
            assert!(dx <= 1 && dy <= 1 && dx + dy > 0, "gap between {:?} {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn segment_cells_reverse_symmetric() {
        let l = lattice(40, 40, 0.1);
        let a = Point2::new(0.17, 0.93);
        let b = Point2::new(3.61, 2.02);
        let fwd = l.segment_cells(a, b, 0.05);
        let mut rev = l.segment_cells(b, a, 0.05);
        rev.reverse();
        assert_eq!(fwd, rev);
    }

    #[test]
    fn segment_free_inside_room() {
        let g = open_grid(20, 20, 0.1);
        assert!(g.is_segment_known_free(Point2::new(0.15, 0.15), Point2::new(1.85, 1.55)));
    }

    #[test]
    fn segment_blocked_by_occupied_cell() {
        let mut g = open_grid(20, 20, 0.1);
        g.set_prob(Cell::new(10, 10), P_MAX);
        let a = Point2::new(0.15, 1.05);
        let b = Point2::new(1.85, 1.05);
        assert!(!g.is_segment_known_free(a, b));
        assert_eq!(g.is_segment_known_free(a, b), g.is_segment_known_free(b, a));
    }

    #[test]
    fn segment_blocked_by_unknown_cell() {
        let mut g = open_grid(20, 20, 0.1);
        g.set_prob(Cell::new(10, 10), 0.5);
        assert!(!g.is_segment_known_free(Point2::new(0.15, 1.05), Point2::new(1.85, 1.05)));
    }

    #[test]
    fn pgm_roundtrip_bit_exact() {
        let mut g = OccupancyGrid::new(lattice(9, 7, 0.25), 0.3).unwrap();
        g.set_prob(Cell::new(2, 2), 0.9);
        g.set_prob(Cell::new(4, 1), 0.07);
        let pgm = g.to_pgm();
        let side = g.sidecar_json();
        let back = OccupancyGrid::from_pgm(&pgm, &side).unwrap();
        assert_eq!(back.to_pgm(), pgm);
        assert_eq!(back.sidecar_json(), side);
    }
}
