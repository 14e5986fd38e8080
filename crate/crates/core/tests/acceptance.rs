//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its measured runtime. Shared campaign data is computed
//! once and reused across criteria.
//!
//! Run with `cargo test -p gdm-core --test acceptance -- --nocapture`.

use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use gdm_core::frontier::{detect_gas_frontiers, GasThreshold, GoalPolicy};
use gdm_core::gas::{GasKnowledgePartition, GasMap, GasObservation, GasPosterior, GmrfHyper};
use gdm_core::geom::{Cell, Point2};
use gdm_core::grid::{Lattice, OccupancyGrid, P_MIN, TAU_FREE_DEFAULT};
use gdm_core::info::{build_field, informed_sample};
use gdm_core::metrics::{
    convergence_study, monte_carlo, CampaignConfig, CampaignResult, ConvergenceResult,
};
use gdm_core::plan::{informed_tree, make_goal_regions, PlannerConfig};
use gdm_core::rng::stream;
use gdm_core::sim::mission::{records_to_jsonl, run_mission};
use gdm_core::sim::Scenario;
use rand::Rng;

fn scenario(name: &str) -> Scenario {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name);
    Scenario::load(&path).expect("scenario loads")
}

fn report(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("acceptance {criterion}: PASS ({:.1}s)", elapsed.as_secs_f64());
    assert!(
        elapsed <= budget,
        "{criterion} exceeded its runtime budget: {:.1}s > {:.0}s",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
}

// ---------------------------------------------------------------------------
// Criterion 1: wavefront gas-frontier detection equals the exhaustive
// definition restricted to the robot's critical component. Exact set
// equality on >= 100 random maps up to 40x40. Budget: 10 s.
// ---------------------------------------------------------------------------

/// Exhaustive oracle, independent of the wavefront implementation:
/// label every gas-frontier cell from the definition, build 8-connected
/// components, keep those adjacent to the robot's critical component.
fn gas_frontier_oracle(
    free: &std::collections::HashSet<Cell>,
    unknown: &std::collections::HashSet<Cell>,
    crit: &std::collections::HashSet<Cell>,
    robot: Cell,
    min_size: usize,
) -> Vec<Vec<Cell>> {
    use std::collections::HashSet;
    debug_assert!(unknown.is_subset(free) && crit.is_subset(free));
    let neighbors = |c: Cell| c.neighbors8();
    // All gas-frontier cells by definition.
    let gf: HashSet<Cell> = unknown
        .iter()
        .copied()
        .filter(|c| neighbors(*c).iter().any(|n| crit.contains(n)))
        .collect();
    // Robot's critical component: critical cells reachable through critical
    // cells, first hop from the robot cell.
    let mut reach: HashSet<Cell> = HashSet::from([robot]);
    let mut queue = vec![robot];
    while let Some(c) = queue.pop() {
        for n in neighbors(c) {
            if crit.contains(&n) && !reach.contains(&n) {
                reach.insert(n);
                queue.push(n);
            }
        }
    }
    // Components of gf.
    let mut seen: HashSet<Cell> = HashSet::new();
    let mut out = Vec::new();
    let mut gf_sorted: Vec<Cell> = gf.iter().copied().collect();
    gf_sorted.sort();
    for seed in gf_sorted {
        if seen.contains(&seed) {
            continue;
        }
        let mut comp = vec![seed];
        let mut q = vec![seed];
        seen.insert(seed);
        while let Some(c) = q.pop() {
            for n in neighbors(c) {
                if gf.contains(&n) && !seen.contains(&n) {
                    seen.insert(n);
                    comp.push(n);
                    q.push(n);
                }
            }
        }
        let touches_reach =
            comp.iter().any(|c| neighbors(*c).iter().any(|n| reach.contains(n)));
        if touches_reach && comp.len() >= min_size {
            comp.sort();
            out.push(comp);
        }
    }
    out.sort();
    out
}

#[test]
fn criterion_1_gas_frontier_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = stream(0xACC1, "gas-frontier-acceptance", 0);
    let mut maps_checked = 0;
    while maps_checked < 120 {
        let w: i32 = rng.gen_range(8..=40);
        let h: i32 = rng.gen_range(8..=40);
        let lattice =
            Lattice::new(Point2::new(0.0, 0.0), 0.1, w as u32, h as u32).unwrap();
        let mut grid = OccupancyGrid::new(lattice.clone(), TAU_FREE_DEFAULT).unwrap();
        let mut free = std::collections::HashSet::new();
        let mut unknown = std::collections::HashSet::new();
        let mut observed_cells = Vec::new();
        let mut crit = std::collections::HashSet::new();
        let mut means = Vec::new();
        let mut cells = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let c = Cell::new(x, y);
                if rng.gen::<f64>() < 0.85 {
                    grid.set_prob(c, P_MIN);
                    free.insert(c);
                    cells.push(c);
                    if rng.gen::<f64>() < 0.5 {
                        observed_cells.push(c);
                        if rng.gen::<f64>() < 0.4 {
                            crit.insert(c);
                            means.push((c, 10.0));
                        } else {
                            means.push((c, 0.5));
                        }
                    } else {
                        unknown.insert(c);
                        means.push((c, 0.0));
                    }
                } else {
                    grid.set_prob(c, 0.98);
                }
            }
        }
        if crit.is_empty() {
            continue;
        }
        let mut crit_sorted: Vec<Cell> = crit.iter().copied().collect();
        crit_sorted.sort();
        let robot = crit_sorted[rng.gen_range(0..crit_sorted.len())];
        let min_size = rng.gen_range(1..=3);

        let mean_vec: Vec<f64> = cells
            .iter()
            .map(|c| means.iter().find(|(mc, _)| mc == c).unwrap().1)
            .collect();
        let post = GasPosterior::synthetic(
            cells.clone(),
            mean_vec,
            vec![1.0; cells.len()],
            1.0,
            1.0,
        );
        let partition = GasKnowledgePartition {
            observed: observed_cells.clone(),
            unknown: {
                let mut v: Vec<Cell> = unknown.iter().copied().collect();
                v.sort();
                v
            },
        };
        let thr = GasThreshold { tau_gas: 5.0, percentile: 10.0, tau_gas_min: 2.0 };
        let got = detect_gas_frontiers(
            &post,
            &grid,
            &partition,
            lattice.cell_center(robot),
            &thr,
            min_size,
        )
        .unwrap();
        let mut got_sets: Vec<Vec<Cell>> = got.iter().map(|f| f.cells.clone()).collect();
        got_sets.sort();
        let expect = gas_frontier_oracle(&free, &unknown, &crit, robot, min_size);
        assert_eq!(got_sets, expect, "map {maps_checked} ({w}x{h}) min_size {min_size}");
        maps_checked += 1;
    }
    report("criterion 1 (gas-frontier oracle equivalence)", started, Duration::from_secs(10));
}

// ---------------------------------------------------------------------------
// Criterion 2: iterative GMRF solve vs dense Cholesky oracle on 50 random
// instances up to 30x30 (means <= 1e-6 max relative, variances <= 5%
// relative), plus variance monotonicity under added observations in 100/100
// cases. Budget: 30 s.
// ---------------------------------------------------------------------------

fn random_gas_instance(
    rng: &mut impl Rng,
    max_side: i32,
    max_obs: usize,
) -> (OccupancyGrid, GasMap) {
    let w = rng.gen_range(4..=max_side);
    let h = rng.gen_range(4..=max_side);
    let lattice = Lattice::new(Point2::new(0.0, 0.0), 0.1, w as u32, h as u32).unwrap();
    let mut grid = OccupancyGrid::new(lattice, TAU_FREE_DEFAULT).unwrap();
    for y in 0..h {
        for x in 0..w {
            let c = Cell::new(x, y);
            grid.set_prob(c, if rng.gen::<f64>() < 0.9 { P_MIN } else { 0.98 });
        }
    }
    let mut gas = GasMap::new(GmrfHyper::default()).unwrap();
    gas.rebuild_structure(&grid);
    let free: Vec<Cell> = gas.free_cells().to_vec();
    if !free.is_empty() {
        for _ in 0..rng.gen_range(0..=max_obs) {
            let c = free[rng.gen_range(0..free.len())];
            let _ = gas.add_observation(GasObservation {
                position: grid.lattice().cell_center(c),
                concentration: rng.gen_range(0.0..60.0),
                timestamp: rng.gen_range(0.0..120.0),
            });
        }
    }
    (grid, gas)
}

#[test]
fn criterion_2_gmrf_iterative_matches_dense_oracle() {
    let started = Instant::now();
    let mut rng = stream(0xACC2, "gmrf-acceptance", 0);
    let mut checked = 0;
    while checked < 50 {
        let (_grid, mut gas) = random_gas_instance(&mut rng, 30, 20);
        if gas.free_cells().is_empty() {
            continue;
        }
        let now = 120.0;
        let it = gas.solve_iterative(now, 1e-12, 100_000).unwrap();
        let de = gas.solve_dense(now).unwrap();
        let scale = de.means().iter().fold(1.0f64, |a, &b| a.max(b.abs()));
        for i in 0..it.len() {
            let mean_err = (it.means()[i] - de.means()[i]).abs() / scale;
            assert!(mean_err <= 1e-6, "instance {checked}: mean error {mean_err:.2e}");
            let var_rel = (it.variances()[i] - de.variances()[i]).abs() / de.variances()[i];
            assert!(var_rel <= 0.05, "instance {checked}: variance error {var_rel:.2e}");
        }
        checked += 1;
    }
    // Variance monotonicity under one added observation, 100/100 cases.
    let mut held = 0;
    for _ in 0..100 {
        let (grid, mut gas) = loop {
            let inst = random_gas_instance(&mut rng, 20, 6);
            if !inst.1.free_cells().is_empty() {
                break inst;
            }
        };
        let before = gas.solve_dense(0.0).unwrap();
        let free: Vec<Cell> = gas.free_cells().to_vec();
        let c = free[rng.gen_range(0..free.len())];
        gas.add_observation(GasObservation {
            position: grid.lattice().cell_center(c),
            concentration: rng.gen_range(0.0..60.0),
            timestamp: 0.0,
        })
        .unwrap();
        let after = gas.solve_dense(0.0).unwrap();
        let ok = (0..before.len())
            .all(|i| after.variances()[i] <= before.variances()[i] + 1e-10);
        assert!(ok, "variance increased after adding an observation");
        held += 1;
    }
    assert_eq!(held, 100);
    report("criterion 2 (GMRF correctness)", started, Duration::from_secs(30));
}

// ---------------------------------------------------------------------------
// Criterion 3: planner convergence on three frozen scenarios; median cost at
// N = 800 over 10 seeds within 10% of the fine-grid reference at alpha = 0
// and alpha = 1; medians nonincreasing in N with <= 2% noise. Budget: 5 min.
// ---------------------------------------------------------------------------

fn medians(result: &ConvergenceResult, n_list: &[usize]) -> Vec<f64> {
    n_list
        .iter()
        .map(|&n| {
            let mut v: Vec<f64> = result
                .rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| if r.cost.is_nan() { f64::INFINITY } else { r.cost })
                .collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v[v.len() / 2]
        })
        .collect()
}

#[test]
fn criterion_3_planner_convergence_to_oracle() {
    let started = Instant::now();
    let n_list = [50usize, 100, 200, 400, 800];
    for name in ["conv_open.json", "conv_gap.json", "conv_blobs.json"] {
        let sc = scenario(name);
        for alpha in [0.0, 1.0] {
            let planner = PlannerConfig { alpha, ..Default::default() };
            let result = convergence_study(&sc, &planner, &n_list, 10, 0).unwrap();
            let meds = medians(&result, &n_list);
            let rel = (meds[n_list.len() - 1] - result.oracle_cost).abs() / result.oracle_cost;
            assert!(
                rel <= 0.10,
                "{name} alpha={alpha}: median at N=800 {:.2} vs oracle {:.2} (rel {rel:.3})",
                meds[n_list.len() - 1],
                result.oracle_cost
            );
            for k in 1..meds.len() {
                assert!(
                    meds[k] <= meds[k - 1] * 1.02,
                    "{name} alpha={alpha}: median rose {} -> {} at N={}",
                    meds[k - 1],
                    meds[k],
                    n_list[k]
                );
            }
        }
    }
    report("criterion 3 (planner convergence)", started, Duration::from_secs(300));
}

// ---------------------------------------------------------------------------
// Criterion 4: probabilistic-completeness proxy on the corridor maze;
// success over 100 seeds nondecreasing in N and >= 0.95 at N = 800.
// Budget: 3 min.
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_completeness_proxy_on_maze() {
    let started = Instant::now();
    let sc = scenario("maze_corridor.json");
    let n_list = [50usize, 100, 200, 400, 800];
    let planner = PlannerConfig { alpha: 1.0, ..Default::default() };
    let result = convergence_study(&sc, &planner, &n_list, 100, 0).unwrap();
    let success: Vec<f64> = n_list
        .iter()
        .map(|&n| {
            let runs: Vec<&gdm_core::metrics::ConvergenceRow> =
                result.rows.iter().filter(|r| r.n == n).collect();
            runs.iter().filter(|r| r.cost.is_finite()).count() as f64 / runs.len() as f64
        })
        .collect();
    println!("  maze success by N: {success:?}");
    for k in 1..success.len() {
        assert!(
            success[k] >= success[k - 1],
            "success decreased from N={} to N={}",
            n_list[k - 1],
            n_list[k]
        );
    }
    assert!(success[n_list.len() - 1] >= 0.95, "success at N=800: {}", success[4]);
    report("criterion 4 (completeness proxy)", started, Duration::from_secs(180));
}

// ---------------------------------------------------------------------------
// Criteria 5 and 6 share one desk-scale campaign: XIT-GFF/UCB and
// XIT-FGF/UCB against the RRT* frontier baseline, 10 paired seeds, 120 s
// budget. Criterion 5 budget: 20 min.
// ---------------------------------------------------------------------------

struct SharedCampaign {
    result: CampaignResult,
    elapsed: Duration,
}

fn campaign() -> &'static SharedCampaign {
    static CAMPAIGN: OnceLock<SharedCampaign> = OnceLock::new();
    CAMPAIGN.get_or_init(|| {
        let sc = scenario("desk.json");
        let planner = PlannerConfig::default();
        let configs = vec![
            CampaignConfig {
                id: "gff-ucb".into(),
                policy: GoalPolicy::Gff,
                planner,
            },
            CampaignConfig {
                id: "fgf-ucb".into(),
                policy: GoalPolicy::Fgf,
                planner,
            },
            CampaignConfig {
                id: "baseline".into(),
                policy: GoalPolicy::Baseline,
                planner: PlannerConfig { cost: gdm_core::plan::CostMode::Euclidean, ..planner },
            },
        ];
        let started = Instant::now();
        let result = monte_carlo(&sc, &configs, 10, 100, Some("baseline"), 1).unwrap();
        SharedCampaign { result, elapsed: started.elapsed() }
    })
}

fn config_finals(c: &CampaignResult, id: &str) -> Vec<(u64, f64, f64, f64)> {
    let mut v: Vec<(u64, f64, f64, f64)> = c
        .trials
        .iter()
        .filter(|t| t.config_id == id && !t.failed)
        .map(|t| (t.seed, t.final_rmse, t.final_entropy, t.final_completeness))
        .collect();
    v.sort_by_key(|t| t.0);
    v
}

#[test]
fn criterion_5_mission_level_comparison() {
    let shared = campaign();
    let started = Instant::now();
    let gff = config_finals(&shared.result, "gff-ucb");
    let fgf = config_finals(&shared.result, "fgf-ucb");
    let base = config_finals(&shared.result, "baseline");
    assert_eq!(gff.len(), 10);
    assert_eq!(base.len(), 10);
    let mean = |v: &[(u64, f64, f64, f64)], i: usize| -> f64 {
        v.iter().map(|t| [t.1, t.2, t.3][i]).sum::<f64>() / v.len() as f64
    };
    let (g_rmse, f_rmse, b_rmse) = (mean(&gff, 0), mean(&fgf, 0), mean(&base, 0));
    let (g_h, b_h) = (mean(&gff, 1), mean(&base, 1));
    println!(
        "  mean final RMSE: gff {g_rmse:.2} | fgf {f_rmse:.2} | baseline {b_rmse:.2}; mean final entropy: gff {g_h:.1} | baseline {b_h:.1}"
    );
    assert!(g_rmse < b_rmse, "GFF mean RMSE must beat the baseline");
    assert!(g_h < b_h, "GFF mean entropy must beat the baseline");
    assert!(
        g_rmse <= f_rmse && f_rmse <= b_rmse,
        "mean RMSE ordering GFF <= FGF <= baseline violated"
    );
    let paired_rmse = gff
        .iter()
        .zip(&base)
        .filter(|(g, b)| {
            assert_eq!(g.0, b.0, "seed pairing broken");
            g.1 < b.1
        })
        .count();
    let paired_h = gff.iter().zip(&base).filter(|(g, b)| g.2 < b.2).count();
    println!("  paired wins vs baseline: RMSE {paired_rmse}/10, entropy {paired_h}/10");
    assert!(paired_rmse >= 8, "paired RMSE wins {paired_rmse}/10 < 8");
    assert!(paired_h >= 8, "paired entropy wins {paired_h}/10 < 8");
    assert!(
        shared.elapsed <= Duration::from_secs(1200),
        "campaign exceeded 20 min: {:.0}s",
        shared.elapsed.as_secs_f64()
    );
    report("criterion 5 (mission-level comparison)", started, Duration::from_secs(1200));
}

#[test]
fn criterion_6_completeness_parity() {
    let shared = campaign();
    let started = Instant::now();
    let mut t90_means = Vec::new();
    for id in ["gff-ucb", "fgf-ucb", "baseline"] {
        let trials: Vec<_> = shared
            .result
            .trials
            .iter()
            .filter(|t| t.config_id == id && !t.failed)
            .collect();
        for t in &trials {
            assert!(
                t.final_completeness >= 0.95,
                "{id} seed {} reached only {:.3} completeness",
                t.seed,
                t.final_completeness
            );
        }
        let t90s: Vec<f64> = trials
            .iter()
            .map(|t| t.t90.expect("every trial reaches 90% coverage"))
            .collect();
        t90_means.push(t90s.iter().sum::<f64>() / t90s.len() as f64);
    }
    let (lo, hi) = (
        t90_means.iter().cloned().fold(f64::INFINITY, f64::min),
        t90_means.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    println!("  mean time-to-90%-coverage: {t90_means:?}");
    assert!(
        (hi - lo) / lo <= 0.25,
        "time-to-90%-coverage spread {:.1}% exceeds 25%",
        100.0 * (hi - lo) / lo
    );
    report("criterion 6 (completeness parity)", started, Duration::from_secs(1200));
}

// ---------------------------------------------------------------------------
// Criterion 7: one plan at the reference configuration (N = 300, 5 goals)
// on the desk-scale map in under 2 s.
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_planning_throughput() {
    let started = Instant::now();
    let sc = scenario("desk.json");
    let grid = sc.ground_truth_grid().unwrap();
    let truth = gdm_core::sim::GroundTruthField::from_scenario(&sc);
    let lattice = grid.lattice().clone();
    let free = grid.known_free();
    let cells: Vec<Cell> = free.cells().to_vec();
    let means: Vec<f64> =
        cells.iter().map(|c| truth.concentration(lattice.cell_center(*c), 0.0)).collect();
    let post =
        GasPosterior::synthetic(cells.clone(), means, vec![1.0; cells.len()], 1.0, 1.0);
    let field = build_field(&post, &free, &lattice, 1.0);
    let config = PlannerConfig::default();
    assert_eq!(config.n_samples, 300);
    assert_eq!(config.max_goals, 5);
    let start_pos = sc.start_point();
    let start_cell = lattice.cell_of(start_pos).unwrap();
    let goal_points = [
        Point2::new(7.0, 9.0),
        Point2::new(1.0, 9.0),
        Point2::new(7.0, 1.0),
        Point2::new(4.0, 5.0),
        Point2::new(7.4, 4.6),
    ];
    let mut worst = Duration::ZERO;
    for trial in 0..3u64 {
        let mut rng = stream(trial, "throughput", 0);
        let batch = informed_sample(&field, 300, 0.2, &[start_cell], &mut rng).unwrap();
        let frontiers: Vec<gdm_core::frontier::Frontier> = goal_points
            .iter()
            .map(|p| gdm_core::frontier::Frontier {
                kind: gdm_core::frontier::FrontierKind::Occupancy,
                cells: vec![lattice.cell_of(*p).unwrap()],
                centroid: *p,
                size: 1,
            })
            .collect();
        let goals = make_goal_regions(&frontiers, &batch, config.k_n);
        let t0 = Instant::now();
        let out = informed_tree::plan(&batch, start_pos, &goals, &field, &grid, &config);
        let dt = t0.elapsed();
        worst = worst.max(dt);
        assert!(!out.trajectories.is_empty());
    }
    println!("  worst single-plan time over 3 runs: {:.3}s", worst.as_secs_f64());
    assert!(worst < Duration::from_secs(2), "plan took {:.3}s", worst.as_secs_f64());
    report("criterion 7 (planning throughput)", started, Duration::from_secs(60));
}

// ---------------------------------------------------------------------------
// Criterion 8: determinism and metric invariants. Same-seed reruns produce
// byte-identical logs; campaign logs satisfy monotone completeness,
// nonnegative RMSE, budget respect; entropy is nonincreasing per added
// observation on a fixed structure.
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_determinism_and_invariants() {
    let started = Instant::now();
    let sc = scenario("tiny.json");
    let planner = PlannerConfig { n_samples: 80, ..Default::default() };
    let a = run_mission(&sc, &planner, GoalPolicy::Gff, 7).unwrap();
    let b = run_mission(&sc, &planner, GoalPolicy::Gff, 7).unwrap();
    assert_eq!(
        records_to_jsonl(&a.records, false),
        records_to_jsonl(&b.records, false),
        "same-seed logs must be byte-identical"
    );
    let c = run_mission(&sc, &planner, GoalPolicy::Gff, 8).unwrap();
    assert_ne!(records_to_jsonl(&a.records, false), records_to_jsonl(&c.records, false));

    // Metric invariants across every logged step of the shared campaign.
    let shared = campaign();
    let budget = scenario("desk.json").budget_s;
    for trial in shared.result.trials.iter().filter(|t| !t.failed) {
        let mut last_completeness = 0.0;
        for r in &trial.steps {
            assert!(r.rmse >= 0.0);
            assert!(r.t <= budget + 1e-9);
            assert!(
                r.completeness >= last_completeness - 1e-12,
                "{} seed {} step {}: completeness decreased",
                trial.config_id,
                trial.seed,
                r.step
            );
            last_completeness = r.completeness;
        }
    }

    // Entropy nonincreasing per added observation on a fixed structure.
    let lattice = Lattice::new(Point2::new(0.0, 0.0), 0.1, 12, 12).unwrap();
    let mut grid = OccupancyGrid::new(lattice, TAU_FREE_DEFAULT).unwrap();
    for i in 0..grid.lattice().num_cells() {
        let cell = grid.lattice().cell_at_index(i);
        grid.set_prob(cell, P_MIN);
    }
    let mut gas = GasMap::new(GmrfHyper::default()).unwrap();
    gas.rebuild_structure(&grid);
    let crit = gdm_core::metrics::CriticalSet {
        cells: (0..12).map(|i| Cell::new(i, 6)).collect(),
        z_thresh: 0.0,
    };
    let mut rng = stream(0xACC8, "entropy-mono", 0);
    let mut last = f64::INFINITY;
    for k in 0..12 {
        let cell = Cell::new(rng.gen_range(0..12), rng.gen_range(0..12));
        gas.add_observation(GasObservation {
            position: grid.lattice().cell_center(cell),
            concentration: rng.gen_range(0.0..30.0),
            timestamp: k as f64,
        })
        .unwrap();
        let post = gas.solve_iterative(k as f64, 1e-10, 50_000).unwrap();
        let h = gdm_core::metrics::entropy(&post, &crit).unwrap();
        assert!(h <= last + 1e-9, "entropy rose after observation {k}");
        last = h;
    }
    report("criterion 8 (determinism and invariants)", started, Duration::from_secs(1200));
}
