//! Lattice GMRF gas posterior over the known-free cells of an occupancy grid.
//!
//! Factor structure:
//! * one pairwise smoothing factor `mu(a) - mu(b) ~ N(0, sigma_r2)` per
//!   unordered pair of 4-adjacent known-free cells,
//! * one anchor factor per free cell pulling its mean toward zero with
//!   precision `sigma_d2` (so an isolated unobserved cell has marginal
//!   variance `1 / sigma_d2`),
//! * one factor per ingested measurement with effective variance
//!   `sigma_s2 * (1 + age^2 / sigma_zeta2)` attached to the containing cell.
//!
//! No factor crosses an occupied or unknown cell, so walls block correlation.
//! Posterior means come from a Jacobi-preconditioned conjugate-gradient solve
//! of the normal equations; marginal variances come from a banded LDL^T
//! factorization with Takahashi selected inversion, which is exact. A dense
//! Cholesky oracle ([`GasMap::solve_dense`]) covers small instances for
//! validation.

pub mod band;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::GdmError;
use crate::geom::{Cell, Point2};
use crate::grid::OccupancyGrid;
use band::BandMatrix;

/// Default cap on free-cell count for the dense oracle.
pub const ORACLE_CAP_DEFAULT: usize = 2500;

/// GMRF hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmrfHyper {
    /// Smoothing (regularization) factor variance between adjacent cells.
    pub sigma_r2: f64,
    /// Observation variance.
    pub sigma_s2: f64,
    /// Time-decay variance; observation variance inflates with age as
    /// `sigma_s2 * (1 + age^2 / sigma_zeta2)`.
    pub sigma_zeta2: f64,
    /// Anchor (default factor) precision pulling each free cell toward zero.
    pub sigma_d2: f64,
}

impl Default for GmrfHyper {
    fn default() -> Self {
        GmrfHyper { sigma_r2: 3.0, sigma_s2: 10.0, sigma_zeta2: 1e10, sigma_d2: 0.001 }
    }
}

impl GmrfHyper {
    pub fn validate(&self) -> Result<(), GdmError> {
        for (name, v) in [
            ("sigma_r2", self.sigma_r2),
            ("sigma_s2", self.sigma_s2),
            ("sigma_zeta2", self.sigma_zeta2),
            ("sigma_d2", self.sigma_d2),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(GdmError::InvalidParameter { name, value: v });
            }
        }
        Ok(())
    }
}

/// One point gas concentration measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasObservation {
    pub position: Point2,
    /// ppm, nonnegative.
    pub concentration: f64,
    /// Mission time in seconds.
    pub timestamp: f64,
}

/// Gas posterior snapshot: per-free-cell mean and exact marginal variance.
#[derive(Debug, Clone)]
pub struct GasPosterior {
    free_cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
    mean: Vec<f64>,
    variance: Vec<f64>,
    /// Max marginal variance of the observation-free system.
    prior_variance: f64,
    /// Marginal variance of a structureless cell (1 / sigma_d2).
    unobserved_variance: f64,
}

impl GasPosterior {
    /// Posterior with externally supplied statistics (synthetic fields for
    /// single-plan studies and tests).
    pub fn synthetic(
        free_cells: Vec<Cell>,
        mean: Vec<f64>,
        variance: Vec<f64>,
        prior_variance: f64,
        unobserved_variance: f64,
    ) -> GasPosterior {
        assert_eq!(free_cells.len(), mean.len());
        assert_eq!(free_cells.len(), variance.len());
        let index = free_cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        GasPosterior { free_cells, index, mean, variance, prior_variance, unobserved_variance }
    }

    pub fn free_cells(&self) -> &[Cell] {
        &self.free_cells
    }

    pub fn len(&self) -> usize {
        self.free_cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.free_cells.is_empty()
    }

    pub fn mean_at(&self, c: Cell) -> Option<f64> {
        self.index.get(&c).map(|&i| self.mean[i])
    }

    pub fn variance_at(&self, c: Cell) -> Option<f64> {
        self.index.get(&c).map(|&i| self.variance[i])
    }

    pub fn means(&self) -> &[f64] {
        &self.mean
    }

    pub fn variances(&self) -> &[f64] {
        &self.variance
    }

    pub fn prior_variance(&self) -> f64 {
        self.prior_variance
    }

    pub fn unobserved_variance(&self) -> f64 {
        self.unobserved_variance
    }

    /// CSV export: `cell_index,x,y,mean,variance` per free cell.
    pub fn to_csv(&self, lattice: &crate::grid::Lattice) -> String {
        let mut s = String::from("# gdm.posterior/1\ncell_index,x,y,mean,variance\n");
        for (i, c) in self.free_cells.iter().enumerate() {
            let p = lattice.cell_center(*c);
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                lattice.index(*c),
                p.x,
                p.y,
                self.mean[i],
                self.variance[i]
            ));
        }
        s
    }
}

/// Partition of the free cells into gas-observed and gas-unknown.
#[derive(Debug, Clone)]
pub struct GasKnowledgePartition {
    pub observed: Vec<Cell>,
    pub unknown: Vec<Cell>,
}

/// Split free cells at `kappa * prior_variance`: cells whose marginal
/// variance dropped to or below the threshold count as gas-observed.
pub fn partition_knowledge(post: &GasPosterior, kappa: f64) -> GasKnowledgePartition {
    let thr = kappa * post.prior_variance;
    let mut observed = Vec::new();
    let mut unknown = Vec::new();
    for (i, c) in post.free_cells.iter().enumerate() {
        if post.variance[i] <= thr + 1e-12 {
            observed.push(*c);
        } else {
            unknown.push(*c);
        }
    }
    GasKnowledgePartition { observed, unknown }
}

struct ObsTerm {
    cell_idx: usize,
    z: f64,
    timestamp: f64,
}

/// The GMRF model: factor structure over the current free cells plus the
/// ingested observations (replayed whenever the structure is rebuilt).
pub struct GasMap {
    hyper: GmrfHyper,
    lattice: Option<crate::grid::Lattice>,
    free_cells: Vec<Cell>,
    free_index: HashMap<Cell, usize>,
    pairs: Vec<(u32, u32)>,
    bandwidth: usize,
    observations: Vec<GasObservation>,
    active_obs: Vec<ObsTerm>,
    prior_variance: f64,
    prior_stale: bool,
    oracle_cap: usize,
}

impl GasMap {
    pub fn new(hyper: GmrfHyper) -> Result<Self, GdmError> {
        hyper.validate()?;
        Ok(GasMap {
            hyper,
            lattice: None,
            free_cells: Vec::new(),
            free_index: HashMap::new(),
            pairs: Vec::new(),
            bandwidth: 0,
            observations: Vec::new(),
            active_obs: Vec::new(),
            prior_variance: 1.0 / hyper.sigma_d2,
            prior_stale: false,
            oracle_cap: ORACLE_CAP_DEFAULT,
        })
    }

    pub fn with_oracle_cap(mut self, cap: usize) -> Self {
        self.oracle_cap = cap;
        self
    }

    pub fn hyper(&self) -> &GmrfHyper {
        &self.hyper
    }

    pub fn num_pair_factors(&self) -> usize {
        self.pairs.len()
    }

    pub fn num_default_factors(&self) -> usize {
        self.free_cells.len()
    }

    pub fn num_observation_factors(&self) -> usize {
        self.active_obs.len()
    }

    pub fn free_cells(&self) -> &[Cell] {
        &self.free_cells
    }

    /// Derive the factor structure from the grid's known-free set and replay
    /// all stored observations into it. Observations whose cell is not free
    /// under the new structure stay stored but inactive.
    pub fn rebuild_structure(&mut self, occ: &OccupancyGrid) {
        let kf = occ.known_free();
        self.lattice = Some(occ.lattice().clone());
        self.free_cells = kf.cells().to_vec();
        self.free_index =
            self.free_cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        self.pairs.clear();
        let mut bw = 0usize;
        for (i, c) in self.free_cells.iter().enumerate() {
            for n in [Cell::new(c.x + 1, c.y), Cell::new(c.x, c.y + 1)] {
                if let Some(&j) = self.free_index.get(&n) {
                    self.pairs.push((i as u32, j as u32));
                    bw = bw.max(j - i);
                }
            }
        }
        self.bandwidth = bw;
        self.active_obs.clear();
        let obs = std::mem::take(&mut self.observations);
        for o in &obs {
            if let Some(term) = self.resolve_obs(o) {
                self.active_obs.push(term);
            }
        }
        self.observations = obs;
        self.prior_stale = true;
    }

    fn resolve_obs(&self, o: &GasObservation) -> Option<ObsTerm> {
        let lattice = self.lattice.as_ref()?;
        let cell = lattice.cell_of(o.position).ok()?;
        let idx = *self.free_index.get(&cell)?;
        Some(ObsTerm { cell_idx: idx, z: o.concentration, timestamp: o.timestamp })
    }

    /// Max marginal variance of the observation-free system, recomputed
    /// lazily after structure rebuilds.
    fn ensure_prior(&mut self) {
        if !self.prior_stale {
            return;
        }
        let n = self.free_cells.len();
        if n == 0 {
            self.prior_variance = 1.0 / self.hyper.sigma_d2;
        } else {
            let q = self.assemble_band(&[]);
            let f = band::factor(&q).expect("prior precision must be SPD");
            self.prior_variance =
                f.inverse_diag().into_iter().fold(f64::NEG_INFINITY, f64::max);
        }
        self.prior_stale = false;
    }

    /// Ingest a measurement. The position must map to a currently-free cell.
    pub fn add_observation(&mut self, obs: GasObservation) -> Result<(), GdmError> {
        if !(obs.concentration >= 0.0) {
            return Err(GdmError::InvalidParameter {
                name: "concentration",
                value: obs.concentration,
            });
        }
        let lattice = self.lattice.as_ref().ok_or(GdmError::EmptyDomain { what: "gas structure" })?;
        let cell = lattice.cell_of(obs.position)?;
        let Some(&idx) = self.free_index.get(&cell) else {
            return Err(GdmError::BadCell { cell, reason: "observation outside known-free space" });
        };
        self.active_obs.push(ObsTerm { cell_idx: idx, z: obs.concentration, timestamp: obs.timestamp });
        self.observations.push(obs);
        Ok(())
    }

    fn effective_obs_variance(&self, timestamp: f64, now: f64) -> f64 {
        let age = (now - timestamp).max(0.0);
        self.hyper.sigma_s2 * (1.0 + age * age / self.hyper.sigma_zeta2)
    }

    /// Precision diagonal, off-diagonal smoothing weight, and rhs at time `now`.
    fn assemble_terms(&self, now: f64) -> (Vec<f64>, f64, Vec<f64>) {
        let n = self.free_cells.len();
        let s = 1.0 / self.hyper.sigma_r2;
        let mut diag = vec![self.hyper.sigma_d2; n];
        let mut rhs = vec![0.0f64; n];
        for &(a, b) in &self.pairs {
            diag[a as usize] += s;
            diag[b as usize] += s;
        }
        for o in &self.active_obs {
            let w = 1.0 / self.effective_obs_variance(o.timestamp, now);
            diag[o.cell_idx] += w;
            rhs[o.cell_idx] += w * o.z;
        }
        (diag, s, rhs)
    }

    fn assemble_band(&self, obs: &[(usize, f64, f64)]) -> BandMatrix {
        let n = self.free_cells.len();
        let s = 1.0 / self.hyper.sigma_r2;
        let mut q = BandMatrix::zeros(n, self.bandwidth);
        for i in 0..n {
            q.add(i, i, self.hyper.sigma_d2);
        }
        for &(a, b) in &self.pairs {
            let (a, b) = (a as usize, b as usize);
            q.add(a, a, s);
            q.add(b, b, s);
            q.add(a, b, -s);
        }
        for &(idx, w, wz) in obs {
            q.add(idx, idx, w);
            let _ = wz;
        }
        q
    }

    fn posterior_from(&self, mean: Vec<f64>, variance: Vec<f64>) -> GasPosterior {
        GasPosterior {
            free_cells: self.free_cells.clone(),
            index: self.free_index.clone(),
            mean,
            variance,
            prior_variance: self.prior_variance,
            unobserved_variance: 1.0 / self.hyper.sigma_d2,
        }
    }

    /// Iterative posterior solve at time `now`.
    ///
    /// Means: Jacobi-preconditioned conjugate gradients on the normal
    /// equations, to relative residual `tol`. Marginal variances: banded
    /// LDL^T with Takahashi selected inversion (exact). Fails with
    /// [`GdmError::SolverDiverged`] if CG does not reach `tol` within
    /// `max_iters`.
    pub fn solve_iterative(
        &mut self,
        now: f64,
        tol: f64,
        max_iters: usize,
    ) -> Result<GasPosterior, GdmError> {
        let means = self.solve_means(now, tol, max_iters)?;
        let obs_terms: Vec<(usize, f64, f64)> = self
            .active_obs
            .iter()
            .map(|o| {
                let w = 1.0 / self.effective_obs_variance(o.timestamp, now);
                (o.cell_idx, w, w * o.z)
            })
            .collect();
        self.ensure_prior();
        let variance = if self.free_cells.is_empty() {
            Vec::new()
        } else {
            let band = self.assemble_band(&obs_terms);
            let f = band::factor(&band).expect("posterior precision must be SPD");
            f.inverse_diag()
        };
        Ok(self.posterior_from(means, variance))
    }

    /// Means-only refresh: conjugate-gradient solve with marginal variances
    /// carried over from an earlier posterior on the identical structure.
    /// Falls back to the full solve when the structure changed.
    pub fn solve_means_only(
        &mut self,
        now: f64,
        tol: f64,
        max_iters: usize,
        variances_from: &GasPosterior,
    ) -> Result<GasPosterior, GdmError> {
        if variances_from.free_cells != self.free_cells {
            return self.solve_iterative(now, tol, max_iters);
        }
        let means = self.solve_means(now, tol, max_iters)?;
        self.ensure_prior();
        Ok(self.posterior_from(means, variances_from.variance.clone()))
    }

    fn solve_means(&self, now: f64, tol: f64, max_iters: usize) -> Result<Vec<f64>, GdmError> {
        let n = self.free_cells.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let (diag, s, rhs) = self.assemble_terms(now);

        let apply = |x: &[f64], y: &mut [f64]| {
            for i in 0..n {
                y[i] = diag[i] * x[i];
            }
            for &(a, b) in &self.pairs {
                let (a, b) = (a as usize, b as usize);
                y[a] -= s * x[b];
                y[b] -= s * x[a];
            }
        };

        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let rhs_norm = norm(&rhs).max(1.0);
        let mut x = vec![0.0f64; n];
        let mut r = rhs.clone();
        let mut z: Vec<f64> = r.iter().zip(&diag).map(|(ri, di)| ri / di).collect();
        let mut p = z.clone();
        let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let mut q = vec![0.0f64; n];
        let mut residual = norm(&r);
        let mut iters = 0usize;
        while residual > tol * rhs_norm {
            if iters >= max_iters {
                return Err(GdmError::SolverDiverged { residual: residual / rhs_norm, iterations: iters });
            }
            apply(&p, &mut q);
            let pq: f64 = p.iter().zip(&q).map(|(a, b)| a * b).sum();
            let alpha = rz / pq;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            for i in 0..n {
                z[i] = r[i] / diag[i];
            }
            let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
            residual = norm(&r);
            iters += 1;
        }
        Ok(x)
    }

    /// Dense Cholesky oracle: exact means and marginal variances. Refuses
    /// instances above the oracle cap.
    pub fn solve_dense(&mut self, now: f64) -> Result<GasPosterior, GdmError> {
        let n = self.free_cells.len();
        if n > self.oracle_cap {
            return Err(GdmError::OracleTooLarge { cells: n, cap: self.oracle_cap });
        }
        self.ensure_prior();
        if n == 0 {
            return Ok(self.posterior_from(Vec::new(), Vec::new()));
        }
        let (diag, s, rhs) = self.assemble_terms(now);
        let mut q = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            q[(i, i)] = diag[i];
        }
        for &(a, b) in &self.pairs {
            let (a, b) = (a as usize, b as usize);
            q[(a, b)] = -s;
            q[(b, a)] = -s;
        }
        let chol = q.cholesky().ok_or(GdmError::SolverDiverged { residual: f64::NAN, iterations: 0 })?;
        let mean = chol.solve(&nalgebra::DVector::from_vec(rhs));
        let cov = chol.inverse();
        let variance: Vec<f64> = (0..n).map(|i| cov[(i, i)]).collect();
        Ok(self.posterior_from(mean.iter().copied().collect(), variance))
    }
}
