//! Evaluation: critical-region RMSE and differential entropy, exploration
//! completeness, and seeded Monte Carlo campaigns across planner
//! configurations with a worker pool and serial aggregation.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::GdmError;
use crate::frontier::GoalPolicy;
use crate::gas::GasPosterior;
use crate::geom::Cell;
use crate::grid::{Lattice, OccupancyGrid};
use crate::plan::PlannerConfig;
use crate::sim::mission::{run_mission, StepRecord};
use crate::sim::scenario::Scenario;
use crate::sim::truth::GroundTruthField;

/// Free cells whose ground-truth concentration exceeds the threshold; the
/// evaluation domain for RMSE and entropy.
#[derive(Debug, Clone)]
pub struct CriticalSet {
    pub cells: Vec<Cell>,
    pub z_thresh: f64,
}

/// Cells of the lattice that are truly free (center outside all obstacles).
pub fn truth_free_cells(truth: &GroundTruthField, lattice: &Lattice) -> Vec<Cell> {
    (0..lattice.num_cells())
        .map(|i| lattice.cell_at_index(i))
        .filter(|c| truth.is_free(lattice.cell_center(*c)))
        .collect()
}

/// Critical set at cell centers.
pub fn critical_set(truth: &GroundTruthField, lattice: &Lattice, z_thresh: f64) -> CriticalSet {
    let cells = (0..lattice.num_cells())
        .map(|i| lattice.cell_at_index(i))
        .filter(|c| {
            let p = lattice.cell_center(*c);
            truth.is_free(p) && truth.concentration(p, 0.0) > z_thresh
        })
        .collect();
    CriticalSet { cells, z_thresh }
}

/// RMSE of the posterior mean against ground truth over the critical set.
/// Cells without a posterior estimate contribute the zero-mean prior.
pub fn rmse(
    post: &GasPosterior,
    truth: &GroundTruthField,
    lattice: &Lattice,
    crit: &CriticalSet,
) -> Result<f64, GdmError> {
    if crit.cells.is_empty() {
        return Err(GdmError::EmptyDomain { what: "critical set" });
    }
    let mut acc = 0.0;
    for c in &crit.cells {
        let p = lattice.cell_center(*c);
        let mu_hat = post.mean_at(*c).unwrap_or(0.0);
        let mu_gt = truth.concentration(p, 0.0);
        acc += (mu_hat - mu_gt).powi(2);
    }
    Ok((acc / crit.cells.len() as f64).sqrt())
}

/// Total differential entropy (nats) over the critical set:
/// `sum 0.5 ln(2 pi e eps(c))`. Cells outside the posterior structure use
/// the structureless prior variance.
pub fn entropy(post: &GasPosterior, crit: &CriticalSet) -> Result<f64, GdmError> {
    let mut total = 0.0;
    for c in &crit.cells {
        let eps = post.variance_at(*c).unwrap_or(post.unobserved_variance());
        if !(eps > 0.0) {
            return Err(GdmError::InvalidParameter { name: "variance", value: eps });
        }
        total += 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * eps).ln();
    }
    Ok(total)
}

/// Fraction of the true free space currently known free.
pub fn completeness(occ: &OccupancyGrid, truth_free: &[Cell]) -> f64 {
    if truth_free.is_empty() {
        return 0.0;
    }
    let known = truth_free.iter().filter(|c| occ.is_known_free(**c)).count();
    known as f64 / truth_free.len() as f64
}

/// One planner configuration entering a campaign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub id: String,
    pub policy: GoalPolicy,
    pub planner: PlannerConfig,
}

/// Per-trial outcome: the full step series plus final metric values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialResult {
    pub config_id: String,
    pub seed: u64,
    pub steps: Vec<StepRecord>,
    pub final_rmse: f64,
    pub final_entropy: f64,
    pub final_completeness: f64,
    /// First mission time at which completeness reached 0.9, if ever.
    pub t90: Option<f64>,
    pub early_terminated: bool,
    pub failed: bool,
}

/// Aggregated campaign row per configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryRow {
    pub config_id: String,
    pub cost: String,
    pub trials: usize,
    pub failed_trials: usize,
    pub rmse_mean: f64,
    pub rmse_std: f64,
    pub rmse_reduction_pct: Option<f64>,
    pub entropy_mean: f64,
    pub entropy_std: f64,
    pub entropy_reduction_pct: Option<f64>,
    pub completeness_mean: f64,
    pub t90_mean: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub rows: Vec<SummaryRow>,
    pub incomplete: bool,
}

/// Full campaign output: every per-trial series plus the summary.
#[derive(Debug, Clone)]
pub struct CampaignResult {
    pub trials: Vec<TrialResult>,
    pub summary: CampaignSummary,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Aggregate per-trial results into summary rows. Failed trials are excluded
/// from the statistics and flagged. Reductions are
/// `100 * (baseline - config) / baseline` against the named baseline config.
pub fn summarize(
    trials: &[TrialResult],
    configs: &[CampaignConfig],
    baseline_id: Option<&str>,
) -> CampaignSummary {
    let mut rows = Vec::new();
    let mut incomplete = false;
    let finals = |id: &str, f: fn(&TrialResult) -> f64| -> Vec<f64> {
        trials
            .iter()
            .filter(|t| t.config_id == id && !t.failed)
            .map(f)
            .collect()
    };
    let baseline_rmse = baseline_id.map(|id| mean_std(&finals(id, |t| t.final_rmse)).0);
    let baseline_entropy = baseline_id.map(|id| mean_std(&finals(id, |t| t.final_entropy)).0);
    for cfg in configs {
        let ok: Vec<&TrialResult> =
            trials.iter().filter(|t| t.config_id == cfg.id && !t.failed).collect();
        let failed = trials.iter().filter(|t| t.config_id == cfg.id && t.failed).count();
        if failed > 0 {
            incomplete = true;
        }
        let rmse_vals: Vec<f64> = ok.iter().map(|t| t.final_rmse).collect();
        let ent_vals: Vec<f64> = ok.iter().map(|t| t.final_entropy).collect();
        let (rmse_mean, rmse_std) = mean_std(&rmse_vals);
        let (entropy_mean, entropy_std) = mean_std(&ent_vals);
        let completeness_mean = mean_std(&ok.iter().map(|t| t.final_completeness).collect::<Vec<_>>()).0;
        let t90s: Vec<f64> = ok.iter().filter_map(|t| t.t90).collect();
        let t90_mean = if t90s.len() == ok.len() && !t90s.is_empty() {
            Some(mean_std(&t90s).0)
        } else {
            None
        };
        let reduction = |base: Option<f64>, v: f64| {
            base.map(|b| if b.abs() > 1e-12 { 100.0 * (b - v) / b } else { 0.0 })
        };
        rows.push(SummaryRow {
            config_id: cfg.id.clone(),
            cost: format!("{:?}", cfg.planner.cost).to_lowercase(),
            trials: ok.len(),
            failed_trials: failed,
            rmse_mean,
            rmse_std,
            rmse_reduction_pct: reduction(baseline_rmse, rmse_mean),
            entropy_mean,
            entropy_std,
            entropy_reduction_pct: reduction(baseline_entropy, entropy_mean),
            completeness_mean,
            t90_mean,
        });
    }
    CampaignSummary { rows, incomplete }
}

/// Run `trials` seeded missions per configuration on a worker pool and
/// aggregate. Trial seeds are `base_seed + trial_index`, identical across
/// configurations so per-seed pairing is meaningful. A panicking trial is
/// recorded as failed and excluded from the summary statistics.
pub fn monte_carlo(
    scenario: &Scenario,
    configs: &[CampaignConfig],
    trials: usize,
    base_seed: u64,
    baseline_id: Option<&str>,
    workers: usize,
) -> Result<CampaignResult, GdmError> {
    if trials == 0 {
        return Err(GdmError::InvalidParameter { name: "trials", value: 0.0 });
    }
    let tasks: Vec<(usize, u64)> = (0..configs.len())
        .flat_map(|ci| (0..trials as u64).map(move |t| (ci, base_seed + t)))
        .collect();
    let results: Mutex<Vec<Option<TrialResult>>> = Mutex::new(vec![None; tasks.len()]);
    let next = AtomicUsize::new(0);
    let workers = workers.max(1);

    std::thread::scope(|scope| {
        for _ in 0..workers.min(tasks.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let (ci, seed) = tasks[i];
                let cfg = &configs[ci];
                let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
                    run_mission(scenario, &cfg.planner, cfg.policy, seed)
                }));
                let trial = match outcome {
                    Ok(Ok(run)) => {
                        let last = run.records.last();
                        TrialResult {
                            config_id: cfg.id.clone(),
                            seed,
                            final_rmse: last.map_or(f64::NAN, |r| r.rmse),
                            final_entropy: last.map_or(f64::NAN, |r| r.entropy),
                            final_completeness: last.map_or(0.0, |r| r.completeness),
                            t90: run
                                .records
                                .iter()
                                .find(|r| r.completeness >= 0.9)
                                .map(|r| r.t),
                            steps: run.records,
                            early_terminated: run.early_terminated,
                            failed: false,
                        }
                    }
                    Ok(Err(e)) => {
                        eprintln!("warning: trial {seed} of {} failed: {e}", cfg.id);
                        failed_trial(cfg, seed)
                    }
                    Err(_) => {
                        eprintln!("warning: trial {seed} of {} panicked", cfg.id);
                        failed_trial(cfg, seed)
                    }
                };
                results.lock().unwrap()[i] = Some(trial);
            });
        }
    });

    let trials_vec: Vec<TrialResult> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|t| t.expect("all tasks completed"))
        .collect();
    let summary = summarize(&trials_vec, configs, baseline_id);
    Ok(CampaignResult { trials: trials_vec, summary })
}

fn failed_trial(cfg: &CampaignConfig, seed: u64) -> TrialResult {
    TrialResult {
        config_id: cfg.id.clone(),
        seed,
        steps: Vec::new(),
        final_rmse: f64::NAN,
        final_entropy: f64::NAN,
        final_completeness: 0.0,
        t90: None,
        early_terminated: false,
        failed: true,
    }
}

/// One single-plan study run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub seed: u64,
    /// Completed trajectory cost; NaN when no trajectory was found.
    pub cost: f64,
}

/// Single-plan convergence study on a frozen map and field.
#[derive(Debug, Clone)]
pub struct ConvergenceResult {
    pub rows: Vec<ConvergenceRow>,
    /// Point-to-point fine-grid Dijkstra reference (same cost functional).
    pub oracle_cost: f64,
}

/// Frozen single-plan protocol: the scenario's geometry becomes a fully
/// known grid, the ground-truth field becomes a synthetic posterior
/// (means = truth, constant variance), and one plan runs per (N, seed)
/// toward `convergence_goal`. Reported costs extend the trajectory by the
/// final leg to the nominal goal and evaluate the whole path under the
/// density-normalized cost functional, so they compare against the
/// point-to-point reference independent of edge granularity.
pub fn convergence_study(
    scenario: &Scenario,
    planner: &PlannerConfig,
    n_list: &[usize],
    seeds: u64,
    base_seed: u64,
) -> Result<ConvergenceResult, GdmError> {
    use crate::frontier::{Frontier, FrontierKind};
    use crate::gas::GasPosterior;
    use crate::info::{build_field, informed_sample};
    use crate::plan::{informed_tree, make_goal_regions, oracle};

    let goal_xy = scenario
        .convergence_goal
        .ok_or(GdmError::Scenario("scenario has no convergence_goal".to_string()))?;
    let goal = crate::geom::Point2::new(goal_xy[0], goal_xy[1]);
    if n_list.is_empty() {
        return Err(GdmError::InvalidParameter { name: "n_list", value: 0.0 });
    }
    let grid = scenario.ground_truth_grid()?;
    let truth = GroundTruthField::from_scenario(scenario);
    let lattice = grid.lattice().clone();
    let free = grid.known_free();
    let cells: Vec<Cell> = free.cells().to_vec();
    let means: Vec<f64> =
        cells.iter().map(|c| truth.concentration(lattice.cell_center(*c), 0.0)).collect();
    let vars = vec![1.0; cells.len()];
    let post = GasPosterior::synthetic(cells, means, vars, 1.0, 1.0);
    let field = build_field(&post, &free, &lattice, planner.beta);
    let start = scenario.start_point();
    let start_cell = lattice.cell_of(start)?;
    let goal_frontier = Frontier {
        kind: FrontierKind::Occupancy,
        cells: vec![lattice.cell_of(goal)?],
        centroid: goal,
        size: 1,
    };

    let cost_grid = crate::plan::CostGrid::new(&grid, &field);
    let mut rows = Vec::new();
    for &n in n_list {
        for s in 0..seeds {
            let mut config = *planner;
            config.n_samples = n;
            let mut rng = stream_for(base_seed + s, n);
            let cost = match informed_sample(&field, n, config.epsilon_mix, &[start_cell], &mut rng)
            {
                Ok(batch) => {
                    let goals = make_goal_regions(std::slice::from_ref(&goal_frontier), &batch, config.k_n);
                    let out = informed_tree::plan(&batch, start, &goals, &field, &grid, &config);
                    match out.trajectories.first() {
                        Some(traj) => {
                            let mut path = traj.waypoints.clone();
                            let leg_free =
                                grid.is_segment_known_free(*path.last().unwrap(), goal);
                            if leg_free {
                                path.push(goal);
                            }
                            oracle::path_cost_normalized(
                                &path,
                                &cost_grid,
                                config.cost,
                                config.alpha,
                            )
                        }
                        None => f64::NAN,
                    }
                }
                Err(_) => f64::NAN,
            };
            rows.push(ConvergenceRow { n, seed: base_seed + s, cost });
        }
    }
    let oracle_cost = oracle::dijkstra_cost(&grid, &field, planner.cost, planner.alpha, start, goal)
        .ok_or(GdmError::NoTrajectory)?;
    Ok(ConvergenceResult { rows, oracle_cost })
}

fn stream_for(seed: u64, n: usize) -> rand_chacha::ChaCha8Rng {
    crate::rng::stream(seed, "convergence", n as u64)
}

/// CSV export: every row carries the constant oracle column.
pub fn convergence_to_csv(result: &ConvergenceResult) -> String {
    let mut s = String::from("# gdm.convergence/1\nn,seed,cost,oracle_cost\n");
    for r in &result.rows {
        s.push_str(&format!("{},{},{},{}\n", r.n, r.seed, r.cost, result.oracle_cost));
    }
    s
}

/// Campaign CSV with one row per configuration.
pub fn summary_to_csv(summary: &CampaignSummary) -> String {
    let mut s = String::from(
        "# gdm.campaign/1\nmethod,cost,trials,failed,rmse_mean,rmse_std,rmse_reduction_pct,entropy_mean,entropy_std,entropy_reduction_pct,completeness_mean,t90_mean\n",
    );
    for r in &summary.rows {
        let fmt_opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.config_id,
            r.cost,
            r.trials,
            r.failed_trials,
            r.rmse_mean,
            r.rmse_std,
            fmt_opt(r.rmse_reduction_pct),
            r.entropy_mean,
            r.entropy_std,
            fmt_opt(r.entropy_reduction_pct),
            r.completeness_mean,
            fmt_opt(r.t90_mean),
        ));
    }
    s
}
