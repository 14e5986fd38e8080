//! Multi-goal informed-tree planner.
//!
//! One batch of informed samples induces an implicit geometric graph with
//! connection radius `r_N`; the planner grows an explicit tree from the robot
//! state toward every goal region in round-robin fashion. Vertex selection is
//! best-first on cost-to-come plus the current goal's heuristic, edges of the
//! expanded vertex are processed cheapest-estimate-first, and the expensive
//! collision-checked cost runs only after the estimate passes the admission
//! test. Reaching the current goal region abandons that vertex's remaining
//! edge queue. Finished when every goal has a finite-cost member or the
//! vertex queue is exhausted; a trajectory is extracted per solved goal by
//! parent backtracking.

use crate::geom::Point2;
use crate::grid::OccupancyGrid;
use crate::info::{InfoField, SampleBatch};

use super::{
    connection_radius, edge_cost, edge_cost_estimate, heuristic, CostGrid, GoalRegion,
    PlannerConfig, SearchTree, Trajectory,
};

/// Result of one planning call.
pub struct PlanOutcome {
    pub tree: SearchTree,
    pub trajectories: Vec<Trajectory>,
}

impl PlanOutcome {
    /// Trajectory cost extended by the final leg from the reached goal-region
    /// member to the nominal goal point (when that leg is traversable).
    /// Convergence studies compare this against a point-to-point reference so
    /// the measured functional does not depend on where the batch happened to
    /// place the member.
    pub fn completed_cost(
        &self,
        goal: &GoalRegion,
        grid: &OccupancyGrid,
        field: &InfoField,
        config: &PlannerConfig,
    ) -> Option<f64> {
        let traj = self.trajectories.iter().find(|t| t.goal_id == goal.id)?;
        let last = *traj.waypoints.last()?;
        let cost_grid = CostGrid::new(grid, field);
        let leg = edge_cost(last, goal.nominal, &cost_grid, config.cost, config.alpha);
        Some(if leg.is_finite() { traj.cost + leg } else { traj.cost })
    }
}

fn goal_best_member(tree: &SearchTree, goal: &GoalRegion) -> Option<usize> {
    goal.members
        .iter()
        .copied()
        .filter(|&m| tree.g(m).is_finite())
        .min_by(|&a, &b| tree.g(a).partial_cmp(&tree.g(b)).unwrap().then(a.cmp(&b)))
}

fn goal_solved(tree: &SearchTree, goal: &GoalRegion) -> bool {
    goal.members.iter().any(|&m| tree.g(m).is_finite())
}

/// Plan trajectories from `x_k` toward every goal region over the given
/// sample batch. Returns the search tree and one trajectory per solved goal.
pub fn plan(
    batch: &SampleBatch,
    x_k: Point2,
    goals: &[GoalRegion],
    field: &InfoField,
    grid: &OccupancyGrid,
    config: &PlannerConfig,
) -> PlanOutcome {
    let cost_grid = CostGrid::new(grid, field);
    let lambda_free = grid.known_free().measure();
    let n = batch.states.len();
    let r_n = if n >= 2 {
        connection_radius(n, lambda_free, 2, config.gamma_scale, config.epsilon_mix)
            .expect("n >= 2")
    } else {
        // Degenerate batch: allow the root to reach the lone sample.
        batch.states.first().map_or(0.0, |s| s.dist(x_k))
    };
    let mut tree = SearchTree::new(x_k, &batch.states, r_n);

    if goals.is_empty() || n == 0 {
        return PlanOutcome { tree, trajectories: Vec::new() };
    }

    // Vertex queue entries carry an insertion sequence for FIFO tie-breaks.
    let mut queue: Vec<(usize, u64)> = vec![(0, 0)];
    let mut seq = 1u64;

    let h = |x: Point2, goal: &GoalRegion| {
        heuristic(x, goal, config.heuristic, config.cost, config.alpha, &cost_grid)
    };

    'outer: while !queue.is_empty() && goals.iter().any(|gl| !goal_solved(&tree, gl)) {
        for goal in goals {
            if goal_solved(&tree, goal) {
                continue;
            }
            if queue.is_empty() {
                break 'outer;
            }
            // Select argmin g + h for this goal, FIFO on ties.
            let mut best = 0usize;
            let mut best_key = f64::INFINITY;
            let mut best_seq = u64::MAX;
            for (qi, &(v, s)) in queue.iter().enumerate() {
                let key = tree.g(v) + h(tree.positions[v], goal);
                if key < best_key - 1e-12 || (key <= best_key + 1e-12 && s < best_seq) {
                    best = qi;
                    best_key = key;
                    best_seq = s;
                }
            }
            let (v_m, _) = queue.swap_remove(best);
            let v_pos = tree.positions[v_m];

            // Full-neighbourhood edge enqueue within r_N (samples only).
            let mut edges: Vec<(f64, usize)> = Vec::new();
            for w in 1..=n {
                if w == v_m {
                    continue;
                }
                let w_pos = tree.positions[w];
                if v_pos.dist(w_pos) > r_n {
                    continue;
                }
                let est = edge_cost_estimate(v_pos, w_pos, &cost_grid, config.cost, config.alpha);
                edges.push((est + h(w_pos, goal), w));
            }
            // Cheapest estimate first; stable order keeps ties FIFO by
            // sample index.
            edges.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

            for (_, w) in edges {
                let w_pos = tree.positions[w];
                let est = edge_cost_estimate(v_pos, w_pos, &cost_grid, config.cost, config.alpha);
                if tree.g(v_m) + est < tree.g(w) {
                    let true_cost = edge_cost(v_pos, w_pos, &cost_grid, config.cost, config.alpha);
                    if tree.g(v_m) + true_cost < tree.g(w) {
                        let newly_added = tree.connect(v_m, w, true_cost);
                        if newly_added {
                            queue.push((w, seq));
                            seq += 1;
                        }
                        if goal.members.contains(&w) {
                            // Goal reached: drop this vertex's remaining edges.
                            break;
                        }
                    }
                }
            }
        }
    }

    let mut trajectories = Vec::new();
    for goal in goals {
        if let Some(m) = goal_best_member(&tree, goal) {
            let path = tree.path_to_root(m);
            trajectories.push(Trajectory {
                waypoints: path.iter().map(|&v| tree.positions[v]).collect(),
                cost: tree.g(m),
                goal_id: goal.id,
            });
        }
    }
    PlanOutcome { tree, trajectories }
}
