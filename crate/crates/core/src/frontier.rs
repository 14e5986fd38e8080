//! Frontier detection and goal selection.
//!
//! Occupancy frontiers are maximal 8-connected clusters of known-free cells
//! bordering unknown space. Gas frontiers are clusters of gas-unknown cells
//! adjacent to gas-critical cells, found by a wavefront search seeded at the
//! robot cell that propagates through the robot's connected critical region.
//! A persistent store keeps gas frontiers alive across planning steps until
//! every cell stops satisfying the frontier predicate.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::error::GdmError;
use crate::gas::{GasKnowledgePartition, GasPosterior};
use crate::geom::{Cell, Point2};
use crate::grid::{Lattice, OccupancyGrid};

/// Default minimum cluster size; smaller clusters are noise.
pub const MIN_FRONTIER_SIZE_DEFAULT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontierKind {
    Occupancy,
    Gas,
}

/// A connected frontier cluster with its planning goal point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frontier {
    pub kind: FrontierKind,
    /// Sorted cell list, 8-connected.
    pub cells: Vec<Cell>,
    /// Cluster mean snapped to the nearest known-free cell center.
    pub centroid: Point2,
    pub size: usize,
}

/// Dense boolean mask over a lattice.
#[derive(Debug, Clone)]
pub struct CellMask {
    width: i32,
    height: i32,
    bits: Vec<bool>,
}

impl CellMask {
    pub fn new(lattice: &Lattice) -> Self {
        CellMask {
            width: lattice.width() as i32,
            height: lattice.height() as i32,
            bits: vec![false; lattice.num_cells()],
        }
    }

    pub fn from_cells(lattice: &Lattice, cells: &[Cell]) -> Self {
        let mut m = Self::new(lattice);
        for c in cells {
            m.set(*c, true);
        }
        m
    }

    #[inline]
    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && c.x < self.width && c.y < self.height
    }

    #[inline]
    pub fn get(&self, c: Cell) -> bool {
        self.contains(c) && self.bits[(c.y * self.width + c.x) as usize]
    }

    #[inline]
    pub fn set(&mut self, c: Cell, v: bool) {
        if self.contains(c) {
            self.bits[(c.y * self.width + c.x) as usize] = v;
        }
    }
}

fn snap_centroid(occ: &OccupancyGrid, cells: &[Cell]) -> Point2 {
    let lattice = occ.lattice();
    let n = cells.len() as f64;
    let mean = Point2::new(
        cells.iter().map(|c| lattice.cell_center(*c).x).sum::<f64>() / n,
        cells.iter().map(|c| lattice.cell_center(*c).y).sum::<f64>() / n,
    );
    // Nearest known-free cell center; ties broken by lowest cell index.
    let mut best: Option<(f64, usize)> = None;
    for idx in 0..lattice.num_cells() {
        let c = lattice.cell_at_index(idx);
        if !occ.is_known_free(c) {
            continue;
        }
        let d = lattice.cell_center(c).dist(mean);
        let better = match best {
            None => true,
            Some((bd, _)) => d < bd - 1e-12,
        };
        if better {
            best = Some((d, idx));
        }
    }
    match best {
        Some((_, idx)) => lattice.cell_center(lattice.cell_at_index(idx)),
        None => mean,
    }
}

fn make_frontier(kind: FrontierKind, mut cells: Vec<Cell>, occ: &OccupancyGrid) -> Frontier {
    cells.sort();
    cells.dedup();
    let centroid = snap_centroid(occ, &cells);
    Frontier { kind, size: cells.len(), cells, centroid }
}

/// Occupancy frontiers: clusters of known-free cells with at least one
/// unknown 8-neighbour. Cells beyond the lattice edge count as neither
/// unknown nor free. Clusters below `min_frontier_size` are dropped.
pub fn detect_occ_frontiers(occ: &OccupancyGrid, min_frontier_size: usize) -> Vec<Frontier> {
    let lattice = occ.lattice();
    let mut is_frontier = CellMask::new(lattice);
    let mut any = false;
    for idx in 0..lattice.num_cells() {
        let c = lattice.cell_at_index(idx);
        if !occ.is_known_free(c) {
            continue;
        }
        let borders_unknown = c.neighbors8().iter().any(|n| {
            lattice.contains_cell(*n) && matches!(occ.state(*n), crate::grid::CellState::Unknown)
        });
        if borders_unknown {
            is_frontier.set(c, true);
            any = true;
        }
    }
    if !any {
        return Vec::new();
    }
    // 8-connected components in scan order.
    let mut seen = CellMask::new(lattice);
    let mut out = Vec::new();
    for idx in 0..lattice.num_cells() {
        let seed = lattice.cell_at_index(idx);
        if !is_frontier.get(seed) || seen.get(seed) {
            continue;
        }
        let mut cluster = Vec::new();
        let mut queue = VecDeque::from([seed]);
        seen.set(seed, true);
        while let Some(c) = queue.pop_front() {
            cluster.push(c);
            for n in c.neighbors8() {
                if is_frontier.get(n) && !seen.get(n) {
                    seen.set(n, true);
                    queue.push_back(n);
                }
            }
        }
        if cluster.len() >= min_frontier_size {
            out.push(make_frontier(FrontierKind::Occupancy, cluster, occ));
        }
    }
    out
}

/// Dynamic gas-critical threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasThreshold {
    pub tau_gas: f64,
    pub percentile: f64,
    pub tau_gas_min: f64,
}

/// `tau_gas = max(q_p, tau_gas_min)` where `q_p` is the nearest-rank p-th
/// percentile of posterior means over gas-observed cells (0 when none).
pub fn dynamic_threshold(
    post: &GasPosterior,
    partition: &GasKnowledgePartition,
    percentile: f64,
    tau_gas_min: f64,
) -> GasThreshold {
    let mut means: Vec<f64> =
        partition.observed.iter().filter_map(|c| post.mean_at(*c)).collect();
    let q_p = if means.is_empty() {
        0.0
    } else {
        means.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let rank = ((percentile / 100.0) * means.len() as f64).ceil() as usize;
        means[rank.clamp(1, means.len()) - 1]
    };
    GasThreshold { tau_gas: q_p.max(tau_gas_min), percentile, tau_gas_min }
}

/// Gas-frontier cell predicate: gas-unknown, not yet flagged, and adjacent
/// to at least one gas-critical cell — checked in that order.
pub fn is_new_gas_frontier_cell(
    c: Cell,
    unknown_gas: &CellMask,
    critical: &CellMask,
    flagged: &CellMask,
) -> bool {
    if !unknown_gas.get(c) {
        return false;
    }
    if flagged.get(c) {
        return false;
    }
    if !c.neighbors8().iter().any(|n| critical.get(*n)) {
        return false;
    }
    true
}

/// Masks for the gas-frontier predicate at the current maps:
/// (gas-unknown cells, gas-critical cells).
pub fn gas_masks(
    lattice: &Lattice,
    post: &GasPosterior,
    partition: &GasKnowledgePartition,
    thr: &GasThreshold,
) -> (CellMask, CellMask) {
    let unknown_gas = CellMask::from_cells(lattice, &partition.unknown);
    let mut critical = CellMask::new(lattice);
    for c in &partition.observed {
        if post.mean_at(*c).unwrap_or(0.0) >= thr.tau_gas {
            critical.set(*c, true);
        }
    }
    (unknown_gas, critical)
}

/// Wavefront gas-frontier detection.
///
/// Returns the empty set unless the posterior mean at the robot cell reaches
/// `tau_gas`. Otherwise an outer wavefront walks the robot's connected
/// gas-critical region; every qualifying neighbour seeds an inner wavefront
/// that collects its whole connected cluster of gas-frontier cells. Clusters
/// below `min_frontier_size` are discarded.
pub fn detect_gas_frontiers(
    post: &GasPosterior,
    occ: &OccupancyGrid,
    partition: &GasKnowledgePartition,
    robot: Point2,
    thr: &GasThreshold,
    min_frontier_size: usize,
) -> Result<Vec<Frontier>, GdmError> {
    let lattice = occ.lattice();
    let c_r = lattice.cell_of(robot)?;
    if !occ.is_known_free(c_r) {
        return Err(GdmError::BadCell { cell: c_r, reason: "robot cell is not known free" });
    }
    let mut frontiers = Vec::new();
    if post.mean_at(c_r).unwrap_or(0.0) < thr.tau_gas {
        return Ok(frontiers);
    }
    let (unknown_gas, critical) = gas_masks(lattice, post, partition, thr);
    let mut flagged = CellMask::new(lattice);
    let mut visited = CellMask::new(lattice);
    visited.set(c_r, true);
    let mut queue = VecDeque::from([c_r]);
    while let Some(c) = queue.pop_front() {
        for c_n in c.neighbors8() {
            if is_new_gas_frontier_cell(c_n, &unknown_gas, &critical, &flagged) {
                flagged.set(c_n, true);
                let mut cluster = vec![c_n];
                let mut inner = VecDeque::from([c_n]);
                while let Some(cp) = inner.pop_front() {
                    for cpn in cp.neighbors8() {
                        if is_new_gas_frontier_cell(cpn, &unknown_gas, &critical, &flagged) {
                            flagged.set(cpn, true);
                            cluster.push(cpn);
                            inner.push_back(cpn);
                        }
                    }
                }
                if cluster.len() >= min_frontier_size {
                    frontiers.push(make_frontier(FrontierKind::Gas, cluster, occ));
                }
            } else if critical.get(c_n) && !visited.get(c_n) {
                visited.set(c_n, true);
                queue.push_back(c_n);
            }
        }
    }
    Ok(frontiers)
}

/// A gas frontier remembered across planning steps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StoredGasFrontier {
    pub frontier: Frontier,
    pub created_step: u64,
}

/// Persistent gas-frontier store. Detected frontiers merge into overlapping
/// live entries; entries whose cells all stop satisfying the frontier
/// predicate retire to `resolved`.
#[derive(Debug, Clone, Default)]
pub struct GasFrontierStore {
    live: Vec<StoredGasFrontier>,
    resolved: Vec<StoredGasFrontier>,
}

impl GasFrontierStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn live(&self) -> &[StoredGasFrontier] {
        &self.live
    }

    pub fn live_frontiers(&self) -> Vec<Frontier> {
        self.live.iter().map(|s| s.frontier.clone()).collect()
    }

    pub fn resolved(&self) -> &[StoredGasFrontier] {
        &self.resolved
    }

    /// Retire dead frontiers, merge overlapping detections, append new ones.
    pub fn revalidate(
        &mut self,
        detections: Vec<Frontier>,
        post: &GasPosterior,
        partition: &GasKnowledgePartition,
        thr: &GasThreshold,
        occ: &OccupancyGrid,
        step: u64,
    ) {
        let lattice = occ.lattice();
        let (unknown_gas, critical) = gas_masks(lattice, post, partition, thr);
        let empty_flags = CellMask::new(lattice);
        let alive = |f: &Frontier| {
            f.cells
                .iter()
                .any(|c| is_new_gas_frontier_cell(*c, &unknown_gas, &critical, &empty_flags))
        };

        let live = std::mem::take(&mut self.live);
        for entry in live {
            if alive(&entry.frontier) {
                self.live.push(entry);
            } else {
                self.resolved.push(entry);
            }
        }

        for det in detections {
            let overlaps: Vec<usize> = self
                .live
                .iter()
                .enumerate()
                .filter(|(_, s)| {
                    s.frontier.cells.iter().any(|c| det.cells.binary_search(c).is_ok())
                })
                .map(|(i, _)| i)
                .collect();
            if overlaps.is_empty() {
                self.live.push(StoredGasFrontier { frontier: det, created_step: step });
            } else {
                // Merge the detection and every overlapped entry into one.
                let mut cells = det.cells;
                let mut created = step;
                for &i in overlaps.iter().rev() {
                    let s = self.live.remove(i);
                    created = created.min(s.created_step);
                    cells.extend(s.frontier.cells);
                }
                let merged = make_frontier(FrontierKind::Gas, cells, occ);
                self.live.push(StoredGasFrontier { frontier: merged, created_step: created });
            }
        }
    }
}

/// Goal-selection policy over frontier kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GoalPolicy {
    /// Occupancy frontiers only.
    F,
    /// Occupancy frontiers first, gas frontiers fill remaining slots.
    Fgf,
    /// Gas frontiers first, occupancy frontiers fill remaining slots.
    Gff,
    /// Distance-cost frontier exploration baseline (occupancy only).
    Baseline,
}

fn pick<R: Rng>(pool: &[Frontier], k: usize, rng: &mut R) -> Vec<Frontier> {
    if k == 0 || pool.is_empty() {
        return Vec::new();
    }
    if pool.len() <= k {
        return pool.to_vec();
    }
    sample(rng, pool.len(), k).iter().map(|i| pool[i].clone()).collect()
}

/// Select up to `max_goals` frontiers per the policy, sampling without
/// replacement. Gas-first and occupancy-first policies fill leftover slots
/// from the other kind.
pub fn select_goals<R: Rng>(
    policy: GoalPolicy,
    occ_frontiers: &[Frontier],
    gas_frontiers: &[Frontier],
    max_goals: usize,
    rng: &mut R,
) -> Vec<Frontier> {
    match policy {
        GoalPolicy::F | GoalPolicy::Baseline => pick(occ_frontiers, max_goals, rng),
        GoalPolicy::Fgf => {
            let mut goals = pick(occ_frontiers, max_goals, rng);
            let rest = max_goals - goals.len();
            goals.extend(pick(gas_frontiers, rest, rng));
            goals
        }
        GoalPolicy::Gff => {
            let mut goals = pick(gas_frontiers, max_goals, rng);
            let rest = max_goals - goals.len();
            goals.extend(pick(occ_frontiers, rest, rng));
            goals
        }
    }
}

/// JSON records per frontier: `{step, kind, size, centroid, cells}`.
pub fn frontiers_to_json(step: u64, frontiers: &[Frontier]) -> String {
    let records: Vec<serde_json::Value> = frontiers
        .iter()
        .map(|f| {
            serde_json::json!({
                "schema": "gdm.frontier/1",
                "step": step,
                "kind": f.kind,
                "size": f.size,
                "centroid": [f.centroid.x, f.centroid.y],
                "cells": f.cells.iter().map(|c| [c.x, c.y]).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::to_string(&records).expect("frontier json")
}
