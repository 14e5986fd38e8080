//! UCB information field and informed batch sampling.
//!
//! The field scores each known-free cell by normalized posterior mean plus
//! `beta` times marginal variance, min-max normalized to [0, 1]; the planner
//! consumes its complement as a traversal penalty. Batch sampling mixes the
//! normalized field density with a uniform component so every free cell keeps
//! probability at least `epsilon_mix / |free|`.

use rand::Rng;

use crate::error::GdmError;
use crate::gas::GasPosterior;
use crate::geom::{Cell, Point2};
use crate::grid::{KnownFreeSet, Lattice};

/// Normalized UCB values and their penalty complement over known-free cells.
#[derive(Debug, Clone)]
pub struct InfoField {
    lattice: Lattice,
    free_cells: Vec<Cell>,
    /// Per-lattice-cell index into `free_cells`, -1 if not free.
    slot: Vec<i32>,
    i_hat: Vec<f64>,
    beta: f64,
}

impl InfoField {
    pub fn free_cells(&self) -> &[Cell] {
        &self.free_cells
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn i_hat_at(&self, c: Cell) -> Option<f64> {
        if !self.lattice.contains_cell(c) {
            return None;
        }
        let s = self.slot[self.lattice.index(c)];
        (s >= 0).then(|| self.i_hat[s as usize])
    }

    /// Traversal penalty `1 - i_hat`; 1 for cells outside the field.
    pub fn penalty_at(&self, c: Cell) -> f64 {
        self.i_hat_at(c).map_or(1.0, |v| 1.0 - v)
    }

    /// CSV export: `cell_index,x,y,i_hat,penalty`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("# gdm.infofield/1\ncell_index,x,y,i_hat,penalty\n");
        for (i, c) in self.free_cells.iter().enumerate() {
            let p = self.lattice.cell_center(*c);
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                self.lattice.index(*c),
                p.x,
                p.y,
                self.i_hat[i],
                1.0 - self.i_hat[i]
            ));
        }
        s
    }
}

/// Build the field over `free` from the gas posterior.
///
/// Means are normalized by their max when positive (a gas-free map yields a
/// zero mean field); the UCB score `mu_tilde + beta * eps` is then min-max
/// normalized over the free cells. A constant score field degenerates to
/// `i_hat = 0` everywhere, making search distance-dominated.
pub fn build_field(
    post: &GasPosterior,
    free: &KnownFreeSet,
    lattice: &Lattice,
    beta: f64,
) -> InfoField {
    let cells: Vec<Cell> = free.cells().to_vec();
    let n = cells.len();
    let mut slot = vec![-1i32; lattice.num_cells()];
    for (i, c) in cells.iter().enumerate() {
        slot[lattice.index(*c)] = i as i32;
    }
    let mu: Vec<f64> = cells.iter().map(|c| post.mean_at(*c).unwrap_or(0.0)).collect();
    let eps: Vec<f64> =
        cells.iter().map(|c| post.variance_at(*c).unwrap_or(post.unobserved_variance())).collect();
    let mu_max = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mu_tilde: Vec<f64> = if mu_max > 0.0 {
        mu.iter().map(|m| m / mu_max).collect()
    } else {
        vec![0.0; n]
    };
    let score: Vec<f64> =
        mu_tilde.iter().zip(&eps).map(|(m, e)| m + beta * e).collect();
    let lo = score.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = score.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let i_hat: Vec<f64> = if n == 0 || hi - lo <= 1e-12 {
        vec![0.0; n]
    } else {
        score.iter().map(|v| (v - lo) / (hi - lo)).collect()
    };
    InfoField { lattice: lattice.clone(), free_cells: cells, slot, i_hat, beta }
}

/// A batch of unique informed samples (cell centers).
#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub states: Vec<Point2>,
    pub cells: Vec<Cell>,
    pub epsilon_mix: f64,
    /// Set when fewer than the requested N cells were available.
    pub truncated: bool,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Mixture selection weights over the eligible cells:
/// `(1 - epsilon_mix) * i_hat_density + epsilon_mix * uniform`.
pub fn mixture_weights(field: &InfoField, eligible: &[usize], epsilon_mix: f64) -> Vec<f64> {
    let sum_i: f64 = eligible.iter().map(|&i| field.i_hat[i]).sum();
    let n = eligible.len() as f64;
    eligible
        .iter()
        .map(|&i| {
            let informed = if sum_i > 0.0 { field.i_hat[i] / sum_i } else { 1.0 / n };
            (1.0 - epsilon_mix) * informed + epsilon_mix / n
        })
        .collect()
}

/// Draw up to `n` unique free-cell states from the mixture
/// `(1 - epsilon_mix) * i_hat_density + epsilon_mix * uniform`, rejecting
/// repeats. Cells in `exclude` never appear. If fewer than `n` cells are
/// eligible, all of them are returned and the batch is marked truncated.
pub fn informed_sample<R: Rng>(
    field: &InfoField,
    n: usize,
    epsilon_mix: f64,
    exclude: &[Cell],
    rng: &mut R,
) -> Result<SampleBatch, GdmError> {
    if n == 0 {
        return Err(GdmError::InvalidParameter { name: "batch size", value: 0.0 });
    }
    if !(epsilon_mix > 0.0 && epsilon_mix < 1.0) {
        return Err(GdmError::InvalidParameter { name: "epsilon_mix", value: epsilon_mix });
    }
    let excluded: Vec<bool> = {
        let mut v = vec![false; field.free_cells.len()];
        for c in exclude {
            if field.lattice.contains_cell(*c) {
                let s = field.slot[field.lattice.index(*c)];
                if s >= 0 {
                    v[s as usize] = true;
                }
            }
        }
        v
    };
    let eligible: Vec<usize> =
        (0..field.free_cells.len()).filter(|&i| !excluded[i]).collect();
    if eligible.is_empty() {
        return Err(GdmError::NoEligibleCells);
    }

    let weights = mixture_weights(field, &eligible, epsilon_mix);
    let mut cum = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in &weights {
        acc += w;
        cum.push(acc);
    }
    let total = acc;

    let want = n.min(eligible.len());
    let mut chosen = vec![false; eligible.len()];
    let mut cells = Vec::with_capacity(want);
    while cells.len() < want {
        let u: f64 = rng.gen::<f64>() * total;
        let k = cum.partition_point(|&c| c < u).min(eligible.len() - 1);
        if chosen[k] {
            continue;
        }
        chosen[k] = true;
        cells.push(field.free_cells[eligible[k]]);
    }
    let states = cells.iter().map(|c| field.lattice.cell_center(*c)).collect();
    Ok(SampleBatch { states, cells, epsilon_mix, truncated: want < n })
}
