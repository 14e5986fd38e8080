//! Graph-search references for benchmarking the sampling planners.
//!
//! [`dijkstra_cost`] runs Dijkstra over the free cells with a 16-connected
//! neighbourhood and the same penalty-plus-length cost the planner minimizes.
//! Penalty mass is accumulated at one sample per half-resolution step with
//! shared path points counted once and the per-edge sample count normalized
//! to the exact segment length, so short grid edges and long planner edges
//! measure the same functional.
//!
//! [`rgg_dijkstra`] computes exact costs-to-come on the geometric graph a
//! specific batch induces (same states, radius, and edge costs), which upper-
//! bounds nothing and lower-bounds every tree the planner can build on it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::geom::{Cell, Point2};
use crate::grid::OccupancyGrid;
use crate::info::InfoField;

use super::{edge_cost, CostGrid, CostMode};

/// Order-preserving key for nonnegative floats in a binary heap.
#[inline]
fn key(v: f64) -> u64 {
    debug_assert!(v >= 0.0);
    v.to_bits()
}

/// The 16 offsets: 8-neighbourhood plus knight moves.
const OFFSETS: [(i32, i32); 16] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (2, 1),
    (2, -1),
    (-2, 1),
    (-2, -1),
    (1, 2),
    (1, -2),
    (-1, 2),
    (-1, -2),
];

/// Penalty mass of the segment, excluding the first sample point and
/// rescaled so the sampled density is exactly one point per step.
/// Infinite when the segment leaves free space.
fn edge_penalty_dedup(cost_grid: &CostGrid, a: Point2, b: Point2) -> f64 {
    let len = a.dist(b);
    let step = cost_grid.lattice().resolution() / 2.0;
    let n = (len / step).ceil() as usize;
    if n == 0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 1..=n {
        let t = i as f64 / n as f64;
        let p = Point2::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t);
        let cell = match cost_grid.lattice().cell_of(p) {
            Ok(c) => c,
            Err(_) => return f64::INFINITY,
        };
        let v = cost_grid.penalty_at_cell(cell);
        if !v.is_finite() {
            return f64::INFINITY;
        }
        sum += v;
    }
    // Normalize the n sampled points to the exact length/step density.
    sum * (len / step) / n as f64
}

/// Cost of a concrete waypoint path under the same density-normalized
/// discretization of the edge-cost functional as [`dijkstra_cost`]: one
/// penalty sample per half-resolution step with shared waypoints counted
/// once. Infinite if any segment leaves free space. Planner-internal
/// trajectory costs count both endpoints of every edge, which biases
/// comparisons across edge granularities; studies evaluate paths with this
/// function instead.
pub fn path_cost_normalized(
    waypoints: &[Point2],
    cost_grid: &CostGrid,
    mode: CostMode,
    alpha: f64,
) -> f64 {
    let Some(first) = waypoints.first() else {
        return f64::INFINITY;
    };
    let mut total = match mode {
        CostMode::Ucb => match cost_grid.lattice().cell_of(*first) {
            Ok(c) => {
                let p = cost_grid.penalty_at_cell(c);
                if !p.is_finite() {
                    return f64::INFINITY;
                }
                p
            }
            Err(_) => return f64::INFINITY,
        },
        CostMode::Euclidean => 0.0,
    };
    for w in waypoints.windows(2) {
        let len = w[0].dist(w[1]);
        match mode {
            CostMode::Ucb => {
                let pen = edge_penalty_dedup(cost_grid, w[0], w[1]);
                if !pen.is_finite() {
                    return f64::INFINITY;
                }
                total += pen + alpha * len;
            }
            CostMode::Euclidean => {
                total += len;
            }
        }
    }
    total
}

/// Minimum penalty-plus-length cost from `start` to `goal` over the
/// free-cell graph. `None` when unreachable.
pub fn dijkstra_cost(
    grid: &OccupancyGrid,
    field: &InfoField,
    mode: CostMode,
    alpha: f64,
    start: Point2,
    goal: Point2,
) -> Option<f64> {
    let cost_grid = CostGrid::new(grid, field);
    let lattice = grid.lattice().clone();
    let start_cell = lattice.cell_of(start).ok()?;
    let goal_cell = lattice.cell_of(goal).ok()?;
    if !grid.is_known_free(start_cell) || !grid.is_known_free(goal_cell) {
        return None;
    }
    let n = lattice.num_cells();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
    let s_idx = lattice.index(start_cell);
    // The start cell's own sample point, counted once for the whole path.
    let start_pen = match mode {
        CostMode::Ucb => cost_grid.penalty_at_cell(start_cell),
        CostMode::Euclidean => 0.0,
    };
    dist[s_idx] = start_pen;
    heap.push(Reverse((key(start_pen), s_idx)));
    while let Some(Reverse((k, idx))) = heap.pop() {
        if k > key(dist[idx]) {
            continue;
        }
        if idx == lattice.index(goal_cell) {
            return Some(dist[idx]);
        }
        let c = lattice.cell_at_index(idx);
        let c_pos = lattice.cell_center(c);
        for (dx, dy) in OFFSETS {
            let nb = Cell::new(c.x + dx, c.y + dy);
            if !lattice.contains_cell(nb) || !grid.is_known_free(nb) {
                continue;
            }
            let nb_pos = lattice.cell_center(nb);
            let w = match mode {
                CostMode::Ucb => {
                    let pen = edge_penalty_dedup(&cost_grid, c_pos, nb_pos);
                    if !pen.is_finite() {
                        continue;
                    }
                    pen + alpha * c_pos.dist(nb_pos)
                }
                CostMode::Euclidean => {
                    if !grid.is_segment_known_free(c_pos, nb_pos) {
                        continue;
                    }
                    c_pos.dist(nb_pos)
                }
            };
            let nidx = lattice.index(nb);
            let nd = dist[idx] + w;
            if nd < dist[nidx] {
                dist[nidx] = nd;
                heap.push(Reverse((key(nd), nidx)));
            }
        }
    }
    None
}

/// Exact costs-to-come on the geometric graph over `states` (index 0 is the
/// source) with edges shorter than `r_n` and the planner's own edge cost.
pub fn rgg_dijkstra(
    states: &[Point2],
    r_n: f64,
    cost_grid: &CostGrid,
    mode: CostMode,
    alpha: f64,
) -> Vec<f64> {
    let n = states.len();
    let mut dist = vec![f64::INFINITY; n];
    dist[0] = 0.0;
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
    heap.push(Reverse((key(0.0), 0)));
    while let Some(Reverse((k, v))) = heap.pop() {
        if k > key(dist[v]) {
            continue;
        }
        for w in 1..n {
            if w == v || states[v].dist(states[w]) > r_n {
                continue;
            }
            let c = edge_cost(states[v], states[w], cost_grid, mode, alpha);
            if !c.is_finite() {
                continue;
            }
            let nd = dist[v] + c;
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Reverse((key(nd), w)));
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::{GasMap, GmrfHyper};
    use crate::grid::{Lattice, OccupancyGrid, P_MIN, TAU_FREE_DEFAULT};
    use crate::info::build_field;

    fn open_grid(w: u32, h: u32) -> OccupancyGrid {
        let l = Lattice::new(Point2::new(0.0, 0.0), 0.1, w, h).unwrap();
        let mut g = OccupancyGrid::new(l, TAU_FREE_DEFAULT).unwrap();
        for i in 0..g.lattice().num_cells() {
            let c = g.lattice().cell_at_index(i);
            g.set_prob(c, P_MIN);
        }
        g
    }

    fn flat_field(g: &OccupancyGrid) -> InfoField {
        let mut gm = GasMap::new(GmrfHyper::default()).unwrap();
        gm.rebuild_structure(g);
        let post = gm.solve_iterative(0.0, 1e-9, 10_000).unwrap();
        build_field(&post, &g.known_free(), g.lattice(), 0.0)
    }

    #[test]
    fn euclidean_straight_line_within_knight_metric() {
        let g = open_grid(40, 40);
        let field = flat_field(&g);
        let a = Point2::new(0.55, 0.55);
        let b = Point2::new(3.55, 0.55);
        let c = dijkstra_cost(&g, &field, CostMode::Euclidean, 1.0, a, b).unwrap();
        assert!((c - 3.0).abs() < 0.03, "{c}");
        // Diagonal-ish goal: 16-connectivity stays within ~3% of Euclid.
        let d = Point2::new(2.55, 1.55);
        let c2 = dijkstra_cost(&g, &field, CostMode::Euclidean, 1.0, a, d).unwrap();
        let euclid = a.dist(d);
        assert!(c2 >= euclid - 1e-9 && c2 <= 1.03 * euclid, "{c2} vs {euclid}");
    }

    #[test]
    fn unreachable_goal_is_none() {
        let mut g = open_grid(20, 20);
        for y in 0..20 {
            g.set_prob(crate::geom::Cell::new(10, y), 0.98);
        }
        let field = flat_field(&g);
        let c = dijkstra_cost(
            &g,
            &field,
            CostMode::Euclidean,
            1.0,
            Point2::new(0.35, 0.35),
            Point2::new(1.85, 0.35),
        );
        assert!(c.is_none());
    }

    #[test]
    fn uniform_penalty_cost_tracks_length_density() {
        // With penalty identically 1 and alpha 0, the path cost approximates
        // points-per-step times length: ~20 per meter plus the start sample.
        let g = open_grid(40, 20);
        let field = flat_field(&g);
        let a = Point2::new(0.55, 0.55);
        let b = Point2::new(3.55, 0.55);
        let c = dijkstra_cost(&g, &field, CostMode::Ucb, 0.0, a, b).unwrap();
        let expect = 3.0 / 0.05 + 1.0;
        assert!((c - expect).abs() / expect < 0.02, "{c} vs {expect}");
    }
}
