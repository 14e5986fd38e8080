//! Trajectory planning: multi-goal informed-tree search, the RRT* frontier
//! baseline, and the fine-grid Dijkstra reference used to benchmark both.

pub mod oracle;
pub mod rrt;
pub mod informed_tree;

use serde::{Deserialize, Serialize};

use crate::error::GdmError;
use crate::frontier::{Frontier, FrontierKind};
use crate::geom::{Cell, Point2};
use crate::grid::{Lattice, OccupancyGrid};
use crate::info::{InfoField, SampleBatch};

/// Edge and trajectory cost formulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostMode {
    /// Information-penalty cost: summed penalty along the segment plus
    /// `alpha` times Euclidean length.
    Ucb,
    /// Pure Euclidean length.
    Euclidean,
}

/// Cost-to-go estimate used for search ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicMode {
    /// Admissible distance lower bound to the goal region.
    DistanceOnly,
    /// Penalty-plus-distance along the straight line to the best goal
    /// member. Guidance only; not admissible.
    UcbAware,
}

/// Planner configuration. Defaults follow the reference configuration:
/// 300 samples, 5 goal regions, 3 nearest samples per goal, 20% uniform
/// sampling component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlannerConfig {
    pub n_samples: usize,
    pub max_goals: usize,
    pub k_n: usize,
    pub epsilon_mix: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_scale: f64,
    pub heuristic: HeuristicMode,
    pub cost: CostMode,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            n_samples: 300,
            max_goals: 5,
            k_n: 3,
            epsilon_mix: 0.2,
            alpha: 0.0,
            beta: 1.0,
            gamma_scale: 1.0,
            heuristic: HeuristicMode::DistanceOnly,
            cost: CostMode::Ucb,
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<(), GdmError> {
        if self.n_samples == 0 {
            return Err(GdmError::InvalidParameter { name: "n_samples", value: 0.0 });
        }
        if self.max_goals == 0 {
            return Err(GdmError::InvalidParameter { name: "max_goals", value: 0.0 });
        }
        if self.k_n == 0 {
            return Err(GdmError::InvalidParameter { name: "k_n", value: 0.0 });
        }
        if !(self.epsilon_mix > 0.0 && self.epsilon_mix < 1.0) {
            return Err(GdmError::InvalidParameter {
                name: "epsilon_mix",
                value: self.epsilon_mix,
            });
        }
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma_scale", self.gamma_scale),
        ] {
            if v < 0.0 || !v.is_finite() {
                return Err(GdmError::InvalidParameter { name, value: v });
            }
        }
        if self.gamma_scale < 1.0 {
            return Err(GdmError::InvalidParameter {
                name: "gamma_scale",
                value: self.gamma_scale,
            });
        }
        Ok(())
    }
}

/// Lebesgue measure of the unit n-ball for the dimensions we plan in.
fn unit_ball_measure(dim: u32) -> f64 {
    match dim {
        1 => 2.0,
        2 => std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI / 3.0,
        _ => panic!("unsupported dimension {dim}"),
    }
}

/// RGG connection radius `r_N = gamma * (log n / n)^(1/dim)` with
/// `gamma = gamma_scale * epsilon_mix^(-1/dim) * gamma_RGG` and
/// `gamma_RGG = 2 (1 + 1/dim)^(1/dim) (lambda_free / xi_dim)^(1/dim)`.
/// The `epsilon_mix` factor compensates for the informed sampling mixture.
pub fn connection_radius(
    n_samples: usize,
    lebesgue_free: f64,
    dim: u32,
    gamma_scale: f64,
    epsilon_mix: f64,
) -> Result<f64, GdmError> {
    if n_samples < 2 {
        return Err(GdmError::InvalidParameter { name: "n_samples", value: n_samples as f64 });
    }
    let d = f64::from(dim);
    let gamma_rgg = 2.0 * (1.0 + 1.0 / d).powf(1.0 / d)
        * (lebesgue_free / unit_ball_measure(dim)).powf(1.0 / d);
    let gamma = gamma_scale * epsilon_mix.powf(-1.0 / d) * gamma_rgg;
    let n = n_samples as f64;
    Ok(gamma * (n.ln() / n).powf(1.0 / d))
}

/// Fused traversability + penalty lookup for tight segment walks.
/// Blocked (occupied, unknown, or out-of-lattice) samples cost infinity.
pub struct CostGrid {
    lattice: Lattice,
    penalty: Vec<f64>,
    step: f64,
}

impl CostGrid {
    pub fn new(grid: &OccupancyGrid, field: &InfoField) -> Self {
        let lattice = grid.lattice().clone();
        let penalty = (0..lattice.num_cells())
            .map(|i| {
                let c = lattice.cell_at_index(i);
                if grid.is_known_free(c) {
                    field.penalty_at(c)
                } else {
                    f64::INFINITY
                }
            })
            .collect();
        let step = lattice.resolution() / 2.0;
        CostGrid { lattice, penalty, step }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    #[inline]
    fn penalty_at_point(&self, p: Point2) -> f64 {
        match self.lattice.cell_of(p) {
            Ok(c) => self.penalty[self.lattice.index(c)],
            Err(_) => f64::INFINITY,
        }
    }

    #[inline]
    pub fn penalty_at_cell(&self, c: Cell) -> f64 {
        if self.lattice.contains_cell(c) {
            self.penalty[self.lattice.index(c)]
        } else {
            f64::INFINITY
        }
    }

    /// Penalty sum over the sampled segment points (both endpoints
    /// included); infinity as soon as any point is blocked.
    pub fn segment_penalty(&self, a: Point2, b: Point2) -> f64 {
        let len = a.dist(b);
        if len == 0.0 {
            return self.penalty_at_point(a);
        }
        let n = (len / self.step).ceil() as usize;
        let mut sum = 0.0;
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let p = Point2::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t);
            let v = self.penalty_at_point(p);
            if !v.is_finite() {
                return f64::INFINITY;
            }
            sum += v;
        }
        sum
    }
}

/// True edge cost. Infinite when the segment leaves known-free space.
pub fn edge_cost(a: Point2, b: Point2, cost_grid: &CostGrid, mode: CostMode, alpha: f64) -> f64 {
    let pen = cost_grid.segment_penalty(a, b);
    if !pen.is_finite() {
        return f64::INFINITY;
    }
    match mode {
        CostMode::Ucb => pen + alpha * a.dist(b),
        CostMode::Euclidean => a.dist(b),
    }
}

/// Admissible edge cost estimate: endpoint penalties plus the distance term
/// (every sampled segment contains both endpoints and penalties are
/// nonnegative). No collision check.
pub fn edge_cost_estimate(
    a: Point2,
    b: Point2,
    cost_grid: &CostGrid,
    mode: CostMode,
    alpha: f64,
) -> f64 {
    match mode {
        CostMode::Ucb => {
            let pa = cost_grid.penalty_at_point(a).min(1.0);
            let pb = cost_grid.penalty_at_point(b).min(1.0);
            pa + pb + alpha * a.dist(b)
        }
        CostMode::Euclidean => a.dist(b),
    }
}

/// A frontier-derived goal region: the nominal point plus its `k_n` nearest
/// batch samples.
#[derive(Debug, Clone)]
pub struct GoalRegion {
    pub id: usize,
    pub nominal: Point2,
    /// Indices into the planner's state array (root excluded).
    pub members: Vec<usize>,
    pub member_positions: Vec<Point2>,
    pub kind: FrontierKind,
}

/// Build goal regions from frontier centroids: each takes the `k_n` nearest
/// batch samples (all of them when the batch is smaller).
pub fn make_goal_regions(
    frontiers: &[Frontier],
    batch: &SampleBatch,
    k_n: usize,
) -> Vec<GoalRegion> {
    frontiers
        .iter()
        .enumerate()
        .map(|(id, f)| {
            let mut order: Vec<usize> = (0..batch.states.len()).collect();
            order.sort_by(|&i, &j| {
                batch.states[i]
                    .dist(f.centroid)
                    .partial_cmp(&batch.states[j].dist(f.centroid))
                    .unwrap()
                    .then(i.cmp(&j))
            });
            order.truncate(k_n);
            GoalRegion {
                id,
                nominal: f.centroid,
                // State index 0 is the root; batch sample i is state i + 1.
                members: order.iter().map(|&i| i + 1).collect(),
                member_positions: order.iter().map(|&i| batch.states[i]).collect(),
                kind: f.kind,
            }
        })
        .collect()
}

/// Cost-to-go estimate from `x` to a goal region.
pub fn heuristic(
    x: Point2,
    goal: &GoalRegion,
    mode: HeuristicMode,
    cost: CostMode,
    alpha: f64,
    cost_grid: &CostGrid,
) -> f64 {
    if goal.member_positions.is_empty() {
        return f64::INFINITY;
    }
    match mode {
        HeuristicMode::DistanceOnly => {
            let d = goal
                .member_positions
                .iter()
                .map(|m| m.dist(x))
                .fold(f64::INFINITY, f64::min);
            match cost {
                CostMode::Ucb => alpha * d,
                CostMode::Euclidean => d,
            }
        }
        HeuristicMode::UcbAware => goal
            .member_positions
            .iter()
            .map(|m| {
                let pen = cost_grid.segment_penalty(x, *m);
                if pen.is_finite() {
                    match cost {
                        CostMode::Ucb => pen + alpha * m.dist(x),
                        CostMode::Euclidean => m.dist(x),
                    }
                } else {
                    // Straight line blocked: fall back to the distance bound.
                    match cost {
                        CostMode::Ucb => alpha * m.dist(x),
                        CostMode::Euclidean => m.dist(x),
                    }
                }
            })
            .fold(f64::INFINITY, f64::min),
    }
}

/// Explicit search tree rooted at the robot state.
#[derive(Debug, Clone)]
pub struct SearchTree {
    /// State 0 is the root; states 1.. are the batch samples.
    pub positions: Vec<Point2>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    g: Vec<f64>,
    cost_from_parent: Vec<f64>,
    in_tree: Vec<bool>,
    pub r_n: f64,
}

impl SearchTree {
    /// Number of vertices currently in the tree (at least the root).
    pub fn len(&self) -> usize {
        self.in_tree.iter().filter(|&&b| b).count()
    }

    /// Always false: the root is in the tree from construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn new(root: Point2, batch_states: &[Point2], r_n: f64) -> Self {
        let mut positions = Vec::with_capacity(batch_states.len() + 1);
        positions.push(root);
        positions.extend_from_slice(batch_states);
        let n = positions.len();
        let mut g = vec![f64::INFINITY; n];
        g[0] = 0.0;
        let mut in_tree = vec![false; n];
        in_tree[0] = true;
        SearchTree {
            positions,
            parent: vec![None; n],
            children: vec![Vec::new(); n],
            g,
            cost_from_parent: vec![0.0; n],
            in_tree,
            r_n,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_tree[v]
    }

    pub fn g(&self, v: usize) -> f64 {
        self.g[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.positions.len())
            .filter_map(|v| self.parent[v].map(|p| (p, v)))
            .collect()
    }

    /// Attach or re-parent `child` under `parent` with the given true edge
    /// cost, propagating the cost change through the child's subtree.
    /// Returns true if this newly added the child to the tree.
    pub fn connect(&mut self, parent: usize, child: usize, true_cost: f64) -> bool {
        debug_assert!(self.in_tree[parent]);
        debug_assert!(true_cost.is_finite());
        let newly_added = !self.in_tree[child];
        if let Some(old) = self.parent[child] {
            self.children[old].retain(|&c| c != child);
        }
        let new_g = self.g[parent] + true_cost;
        let delta = new_g - self.g[child];
        self.parent[child] = Some(parent);
        self.children[parent].push(child);
        self.cost_from_parent[child] = true_cost;
        self.in_tree[child] = true;
        self.g[child] = new_g;
        if !newly_added && delta != 0.0 {
            // Propagate the improvement to descendants.
            let mut stack: Vec<usize> = self.children[child].clone();
            while let Some(v) = stack.pop() {
                self.g[v] += delta;
                stack.extend(self.children[v].iter().copied());
            }
        }
        newly_added
    }

    /// Walk parents from `v` to the root.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Structural validation: one parent per non-root vertex, acyclic,
    /// `g(child) = g(parent) + cost(parent, child)` everywhere.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.positions.len();
        if self.parent[0].is_some() || self.g[0] != 0.0 {
            return Err("root must have no parent and zero cost".into());
        }
        for v in 0..n {
            if !self.in_tree[v] {
                if self.g[v].is_finite() {
                    return Err(format!("vertex {v} outside tree has finite cost"));
                }
                continue;
            }
            if v != 0 {
                let Some(p) = self.parent[v] else {
                    return Err(format!("vertex {v} in tree without parent"));
                };
                if !self.in_tree[p] {
                    return Err(format!("parent of {v} not in tree"));
                }
                let expect = self.g[p] + self.cost_from_parent[v];
                if (self.g[v] - expect).abs() > 1e-6 {
                    return Err(format!(
                        "g inconsistency at {v}: {} vs parent {} + {}",
                        self.g[v], self.g[p], self.cost_from_parent[v]
                    ));
                }
                // Acyclicity: the parent walk must reach the root.
                let mut cur = v;
                let mut hops = 0;
                while let Some(p) = self.parent[cur] {
                    cur = p;
                    hops += 1;
                    if hops > n {
                        return Err(format!("cycle through vertex {v}"));
                    }
                }
                if cur != 0 {
                    return Err(format!("vertex {v} not rooted"));
                }
            }
        }
        Ok(())
    }
}

/// A root-to-goal vertex path with its accumulated cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub waypoints: Vec<Point2>,
    pub cost: f64,
    pub goal_id: usize,
}

impl Trajectory {
    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// Next-best-trajectory selection: minimum cost, ties broken by shorter
/// Euclidean length, then by goal id.
pub fn select_nbt(trajectories: &[Trajectory]) -> Result<&Trajectory, GdmError> {
    trajectories
        .iter()
        .min_by(|a, b| {
            a.cost
                .partial_cmp(&b.cost)
                .unwrap()
                .then(a.length().partial_cmp(&b.length()).unwrap())
                .then(a.goal_id.cmp(&b.goal_id))
        })
        .ok_or(GdmError::NoTrajectory)
}

/// Debug dump of a planning call: vertices, edges, costs-to-come, and the
/// extracted trajectories.
pub fn plan_debug_json(tree: &SearchTree, trajectories: &[Trajectory]) -> String {
    let vertices: Vec<serde_json::Value> = tree
        .positions
        .iter()
        .enumerate()
        .filter(|(v, _)| tree.contains(*v))
        .map(|(v, p)| serde_json::json!({"id": v, "pos": [p.x, p.y], "g": tree.g(v)}))
        .collect();
    let edges: Vec<serde_json::Value> = tree
        .edges()
        .iter()
        .map(|(a, b)| serde_json::json!([a, b]))
        .collect();
    serde_json::json!({
        "schema": "gdm.plan-debug/1",
        "r_n": tree.r_n,
        "vertices": vertices,
        "edges": edges,
        "trajectories": trajectories,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{OccupancyGrid, P_MIN, TAU_FREE_DEFAULT};

    #[test]
    fn default_config_matches_reference_values() {
        let c = PlannerConfig::default();
        assert_eq!(c.n_samples, 300);
        assert_eq!(c.max_goals, 5);
        assert_eq!(c.k_n, 3);
        assert!((c.epsilon_mix - 0.2).abs() < 1e-12);
        c.validate().unwrap();
    }

    fn unit_penalty_world() -> (OccupancyGrid, crate::info::InfoField) {
        // Fully free grid with a zero posterior: i_hat degenerates to 0,
        // penalty is exactly 1 everywhere.
        let lattice = Lattice::new(Point2::new(0.0, 0.0), 0.1, 30, 30).unwrap();
        let mut grid = OccupancyGrid::new(lattice, TAU_FREE_DEFAULT).unwrap();
        for i in 0..grid.lattice().num_cells() {
            let c = grid.lattice().cell_at_index(i);
            grid.set_prob(c, P_MIN);
        }
        let free = grid.known_free();
        let cells: Vec<crate::geom::Cell> = free.cells().to_vec();
        let post = crate::gas::GasPosterior::synthetic(
            cells.clone(),
            vec![0.0; cells.len()],
            vec![1.0; cells.len()],
            1.0,
            1.0,
        );
        let field = crate::info::build_field(&post, &free, grid.lattice(), 0.0);
        (grid, field)
    }

    #[test]
    fn edge_cost_counts_segment_points() {
        let (grid, field) = unit_penalty_world();
        let cost_grid = CostGrid::new(&grid, &field);
        // 0.2 m segment sampled at 0.05 m: 5 points, penalty 1 each.
        let a = Point2::new(0.55, 0.55);
        let b = Point2::new(0.75, 0.55);
        assert!((edge_cost(a, b, &cost_grid, CostMode::Ucb, 0.0) - 5.0).abs() < 1e-9);
        // The alpha term adds exactly alpha times the segment length: a
        // 5-point segment of length 2 at alpha = 1 would cost 5 + 2 = 7.
        let c = Point2::new(2.55, 0.55);
        let penalty_only = edge_cost(a, c, &cost_grid, CostMode::Ucb, 0.0);
        let with_alpha = edge_cost(a, c, &cost_grid, CostMode::Ucb, 1.0);
        assert!((with_alpha - (penalty_only + 2.0)).abs() < 1e-9);
    }

    #[test]
    fn edge_through_blocked_cell_is_infinite() {
        let (mut grid, field) = unit_penalty_world();
        grid.set_prob(crate::geom::Cell::new(15, 5), 0.98);
        let cost_grid = CostGrid::new(&grid, &field);
        let a = Point2::new(0.55, 0.55);
        let b = Point2::new(2.85, 0.55);
        assert!(edge_cost(a, b, &cost_grid, CostMode::Ucb, 0.0).is_infinite());
        assert!(edge_cost(a, b, &cost_grid, CostMode::Euclidean, 0.0).is_infinite());
    }

    #[test]
    fn heuristic_examples() {
        let (grid, field) = unit_penalty_world();
        let cost_grid = CostGrid::new(&grid, &field);
        let goal = GoalRegion {
            id: 0,
            nominal: Point2::new(2.0, 1.0),
            members: vec![1, 2],
            member_positions: vec![Point2::new(2.0, 1.0), Point2::new(2.3, 1.0)],
            kind: crate::frontier::FrontierKind::Occupancy,
        };
        let x = Point2::new(0.0, 1.0);
        // alpha = 0 distance-only lower bound vanishes.
        assert_eq!(
            heuristic(x, &goal, HeuristicMode::DistanceOnly, CostMode::Ucb, 0.0, &cost_grid),
            0.0
        );
        // At a member the bound is zero.
        assert_eq!(
            heuristic(
                Point2::new(2.0, 1.0),
                &goal,
                HeuristicMode::DistanceOnly,
                CostMode::Ucb,
                1.0,
                &cost_grid
            ),
            0.0
        );
        // alpha = 1, nearest member 2 m away.
        let h = heuristic(x, &goal, HeuristicMode::DistanceOnly, CostMode::Ucb, 1.0, &cost_grid);
        assert!((h - 2.0).abs() < 1e-12);
        // The guidance heuristic adds penalty mass, so it dominates the
        // admissible bound on a unit-penalty field.
        let hu = heuristic(x, &goal, HeuristicMode::UcbAware, CostMode::Ucb, 1.0, &cost_grid);
        assert!(hu > h);
    }

    #[test]
    fn gamma_rgg_for_unit_disc_free_space() {
        // lambda_free = pi => gamma_RGG = 2 * sqrt(1.5).
        let r = connection_radius(100, std::f64::consts::PI, 2, 1.0, 1.0 - 1e-12).unwrap();
        let gamma_rgg = 2.0 * 1.5f64.sqrt();
        let expect = gamma_rgg * (100f64.ln() / 100.0).sqrt();
        assert!((r - expect).abs() < 1e-9);
        assert!((gamma_rgg - 2.4495).abs() < 1e-4);
    }

    #[test]
    fn mixture_factor_scales_gamma() {
        let base = connection_radius(100, std::f64::consts::PI, 2, 1.0, 1.0 - 1e-12).unwrap();
        let mixed = connection_radius(100, std::f64::consts::PI, 2, 1.0, 0.2).unwrap();
        assert!((mixed / base - 0.2f64.powf(-0.5)).abs() < 1e-9);
        assert!((0.2f64.powf(-0.5) - 2.2361).abs() < 1e-4);
    }

    #[test]
    fn radius_formula_direct_value() {
        // gamma = 3, N = 100, dim 2 -> 3 * sqrt(ln 100 / 100) ~ 0.6438.
        let gamma = 3.0;
        let r = gamma * (100f64.ln() / 100.0).sqrt();
        assert!((r - 0.6438).abs() < 1e-4);
    }

    #[test]
    fn radius_rejects_tiny_batch() {
        assert!(connection_radius(1, 1.0, 2, 1.0, 0.2).is_err());
    }

    #[test]
    fn nbt_single_candidate() {
        let t = Trajectory { waypoints: vec![Point2::new(0.0, 0.0)], cost: 1.0, goal_id: 0 };
        assert_eq!(select_nbt(std::slice::from_ref(&t)).unwrap(), &t);
    }

    #[test]
    fn nbt_argmin_cost() {
        let a = Trajectory {
            waypoints: vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)],
            cost: 4.0,
            goal_id: 0,
        };
        let b = Trajectory {
            waypoints: vec![Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)],
            cost: 7.5,
            goal_id: 1,
        };
        assert_eq!(select_nbt(&[a.clone(), b]).unwrap(), &a);
    }

    #[test]
    fn nbt_tie_breaks_on_length() {
        let long = Trajectory {
            waypoints: vec![Point2::new(0.0, 0.0), Point2::new(3.0, 0.0)],
            cost: 5.0,
            goal_id: 0,
        };
        let short = Trajectory {
            waypoints: vec![Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)],
            cost: 5.0,
            goal_id: 1,
        };
        assert_eq!(select_nbt(&[long, short.clone()]).unwrap(), &short);
    }

    #[test]
    fn nbt_empty_errors() {
        assert!(matches!(select_nbt(&[]), Err(GdmError::NoTrajectory)));
    }

    #[test]
    fn tree_connect_and_rewire_propagates() {
        let states = [
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 1.0),
        ];
        let mut tree = SearchTree::new(Point2::new(0.0, 0.0), &states, 10.0);
        assert!(tree.connect(0, 1, 5.0));
        assert!(tree.connect(1, 2, 1.0));
        assert!(tree.connect(2, 3, 1.0));
        assert_eq!(tree.g(3), 7.0);
        tree.validate().unwrap();
        // Cheaper route to vertex 1 improves the whole subtree.
        assert!(!tree.connect(0, 1, 1.0));
        assert_eq!(tree.g(1), 1.0);
        assert_eq!(tree.g(2), 2.0);
        assert_eq!(tree.g(3), 3.0);
        tree.validate().unwrap();
    }
}
