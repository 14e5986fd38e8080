//! Shared fixtures for the criterion benchmarks: the desk-scale scenario
//! with a fully known grid and a synthetic ground-truth information field.

use std::path::PathBuf;

use gdm_core::gas::GasPosterior;
use gdm_core::geom::Cell;
use gdm_core::grid::OccupancyGrid;
use gdm_core::info::{build_field, InfoField};
use gdm_core::sim::{GroundTruthField, Scenario};

pub fn desk_scenario() -> Scenario {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/desk.json");
    Scenario::load(&path).expect("desk scenario")
}

/// Fully known desk grid plus a field derived from the true gas
/// concentrations with unit variance.
pub fn desk_world() -> (Scenario, OccupancyGrid, InfoField) {
    let sc = desk_scenario();
    let grid = sc.ground_truth_grid().expect("grid");
    let truth = GroundTruthField::from_scenario(&sc);
    let lattice = grid.lattice().clone();
    let free = grid.known_free();
    let cells: Vec<Cell> = free.cells().to_vec();
    let means: Vec<f64> =
        cells.iter().map(|c| truth.concentration(lattice.cell_center(*c), 0.0)).collect();
    let post = GasPosterior::synthetic(cells.clone(), means, vec![1.0; cells.len()], 1.0, 1.0);
    let field = build_field(&post, &free, &lattice, 1.0);
    (sc, grid, field)
}
