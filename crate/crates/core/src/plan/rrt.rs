//! RRT* frontier-exploration baseline: uniform sampling, Euclidean cost,
//! rewiring, one randomly chosen occupancy frontier centroid as the goal.
//! Collision rules match the informed planner (segments must stay in
//! known-free space).

use rand::Rng;

use crate::error::GdmError;
use crate::frontier::Frontier;
use crate::geom::Point2;
use crate::grid::OccupancyGrid;

use super::Trajectory;

#[derive(Debug, Clone, Copy)]
pub struct RrtParams {
    pub iter_budget: usize,
    /// Steering step (max new-edge length), metres.
    pub step: f64,
    /// A vertex this close to the goal may connect to it directly.
    pub goal_radius: f64,
    /// Fraction of samples drawn at the goal itself.
    pub goal_bias: f64,
}

impl Default for RrtParams {
    fn default() -> Self {
        RrtParams { iter_budget: 2000, step: 0.5, goal_radius: 0.3, goal_bias: 0.05 }
    }
}

struct Nodes {
    pos: Vec<Point2>,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    cost: Vec<f64>,
}

impl Nodes {
    fn reparent(&mut self, v: usize, new_parent: usize, new_cost: f64) {
        let old = self.parent[v];
        self.children[old].retain(|&c| c != v);
        self.parent[v] = new_parent;
        self.children[new_parent].push(v);
        let delta = new_cost - self.cost[v];
        self.cost[v] = new_cost;
        let mut stack = self.children[v].clone();
        while let Some(w) = stack.pop() {
            self.cost[w] += delta;
            stack.extend(self.children[w].iter().copied());
        }
    }
}

fn uniform_free_point<R: Rng>(grid: &OccupancyGrid, rng: &mut R) -> Option<Point2> {
    let lattice = grid.lattice();
    let (w, h) = (f64::from(lattice.width()), f64::from(lattice.height()));
    let res = lattice.resolution();
    for _ in 0..256 {
        let p = Point2::new(
            lattice.origin().x + rng.gen::<f64>() * w * res,
            lattice.origin().y + rng.gen::<f64>() * h * res,
        );
        if let Ok(c) = lattice.cell_of(p) {
            if grid.is_known_free(c) {
                return Some(p);
            }
        }
    }
    None
}

fn rrt_star_to_goal<R: Rng>(
    start: Point2,
    goal: Point2,
    grid: &OccupancyGrid,
    rng: &mut R,
    params: &RrtParams,
) -> Option<(Vec<Point2>, f64)> {
    let lambda_free = grid.known_free().measure();
    let gamma = 2.0 * 1.5f64.sqrt() * (lambda_free / std::f64::consts::PI).sqrt();
    let mut nodes = Nodes {
        pos: vec![start],
        parent: vec![0],
        children: vec![Vec::new()],
        cost: vec![0.0],
    };
    let mut best: Option<(usize, f64)> = None; // (vertex, total cost incl. goal leg)

    for _ in 0..params.iter_budget {
        let target = if rng.gen::<f64>() < params.goal_bias {
            goal
        } else {
            match uniform_free_point(grid, rng) {
                Some(p) => p,
                None => break,
            }
        };
        // Nearest node.
        let nearest = (0..nodes.pos.len())
            .min_by(|&a, &b| {
                nodes.pos[a]
                    .dist(target)
                    .partial_cmp(&nodes.pos[b].dist(target))
                    .unwrap()
                    .then(a.cmp(&b))
            })
            .unwrap();
        let from = nodes.pos[nearest];
        let d = from.dist(target);
        if d < 1e-9 {
            continue;
        }
        let new_pos = if d <= params.step {
            target
        } else {
            Point2::new(
                from.x + (target.x - from.x) / d * params.step,
                from.y + (target.y - from.y) / d * params.step,
            )
        };
        if !grid.is_segment_known_free(from, new_pos) {
            continue;
        }
        // Choose the cheapest collision-free parent in the neighbourhood.
        let n = nodes.pos.len() as f64;
        let radius = (gamma * ((n.ln().max(1.0)) / n).sqrt()).min(params.step * 2.0);
        let mut neighbors: Vec<usize> = (0..nodes.pos.len())
            .filter(|&v| nodes.pos[v].dist(new_pos) <= radius)
            .collect();
        if neighbors.is_empty() {
            neighbors.push(nearest);
        }
        let mut parent = nearest;
        let mut cost = nodes.cost[nearest] + from.dist(new_pos);
        for &v in &neighbors {
            let c = nodes.cost[v] + nodes.pos[v].dist(new_pos);
            if c < cost && grid.is_segment_known_free(nodes.pos[v], new_pos) {
                parent = v;
                cost = c;
            }
        }
        let id = nodes.pos.len();
        nodes.pos.push(new_pos);
        nodes.parent.push(parent);
        nodes.children.push(Vec::new());
        nodes.cost.push(cost);
        nodes.children[parent].push(id);
        // Rewire the neighbourhood through the new node.
        for &v in &neighbors {
            let through = cost + new_pos.dist(nodes.pos[v]);
            if through + 1e-12 < nodes.cost[v]
                && grid.is_segment_known_free(new_pos, nodes.pos[v])
            {
                nodes.reparent(v, id, through);
            }
        }
        // Goal connection.
        let to_goal = new_pos.dist(goal);
        if to_goal <= params.goal_radius && grid.is_segment_known_free(new_pos, goal) {
            let total = cost + to_goal;
            if best.is_none_or(|(_, b)| total < b) {
                best = Some((id, total));
            }
        }
    }

    best.map(|(v, _)| {
        // Recompute from the (possibly rewired) tree costs.
        let mut path = vec![goal];
        let mut cur = v;
        loop {
            path.push(nodes.pos[cur]);
            if cur == 0 {
                break;
            }
            cur = nodes.parent[cur];
        }
        path.reverse();
        let total = nodes.cost[v] + nodes.pos[v].dist(goal);
        (path, total)
    })
}

/// Plan to a randomly selected occupancy frontier centroid with RRT*.
/// Frontiers that fail within the iteration budget are retried in random
/// order; an error is returned once all are exhausted.
pub fn rrt_star_frontier_baseline<R: Rng>(
    x_k: Point2,
    occ_frontiers: &[Frontier],
    grid: &OccupancyGrid,
    rng: &mut R,
    params: &RrtParams,
) -> Result<Trajectory, GdmError> {
    if occ_frontiers.is_empty() {
        return Err(GdmError::NoTrajectory);
    }
    let mut order: Vec<usize> = (0..occ_frontiers.len()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for idx in order {
        let goal = occ_frontiers[idx].centroid;
        if let Some((waypoints, cost)) = rrt_star_to_goal(x_k, goal, grid, rng, params) {
            return Ok(Trajectory { waypoints, cost, goal_id: idx });
        }
    }
    Err(GdmError::NoTrajectory)
}
