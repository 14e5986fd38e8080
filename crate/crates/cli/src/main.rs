//! Command-line entry point: scenario validation, single missions, Monte
//! Carlo campaigns, single-plan convergence studies, and snapshot exports.
//!
//! Exit codes: 0 success, 2 validation failure, 3 runtime failure,
//! 4 metric-invariant violation in a produced log.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gdm_core::frontier::{frontiers_to_json, GoalPolicy};
use gdm_core::metrics::{
    convergence_study, convergence_to_csv, monte_carlo, summary_to_csv, CampaignConfig,
};
use gdm_core::plan::{CostMode, HeuristicMode, PlannerConfig};
use gdm_core::sim::mission::{records_to_jsonl, run_mission, StepRecord};
use gdm_core::sim::Scenario;

#[derive(Parser)]
#[command(name = "gdm", about = "Active gas distribution mapping runner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario file (schema and semantics).
    Validate {
        scenario: PathBuf,
    },
    /// Run one mission (or several seeded trials of one configuration).
    Run(RunArgs),
    /// Run a Monte Carlo campaign across planner configurations.
    Campaign(CampaignArgs),
    /// Single-plan convergence study on a frozen map and field.
    Convergence(ConvergenceArgs),
    /// Run a mission and export map/field/frontier/tree snapshots.
    ExportSnapshot(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    F,
    Fgf,
    Gff,
    Baseline,
}

impl From<PolicyArg> for GoalPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::F => GoalPolicy::F,
            PolicyArg::Fgf => GoalPolicy::Fgf,
            PolicyArg::Gff => GoalPolicy::Gff,
            PolicyArg::Baseline => GoalPolicy::Baseline,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CostArg {
    Ucb,
    Euclidean,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeuristicArg {
    Distance,
    UcbAware,
}

/// Planner overrides; unset flags fall back to the scenario's planner block,
/// then to the built-in defaults.
#[derive(Args, Clone)]
struct PlannerArgs {
    /// Batch size N.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    max_goals: Option<usize>,
    #[arg(long)]
    k_n: Option<usize>,
    #[arg(long)]
    epsilon_mix: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma_scale: Option<f64>,
    #[arg(long)]
    heuristic: Option<HeuristicArg>,
    #[arg(long)]
    cost: Option<CostArg>,
}

impl PlannerArgs {
    fn resolve(&self, scenario: &Scenario) -> PlannerConfig {
        let mut cfg = scenario.planner.unwrap_or_default();
        if let Some(v) = self.n {
            cfg.n_samples = v;
        }
        if let Some(v) = self.max_goals {
            cfg.max_goals = v;
        }
        if let Some(v) = self.k_n {
            cfg.k_n = v;
        }
        if let Some(v) = self.epsilon_mix {
            cfg.epsilon_mix = v;
        }
        if let Some(v) = self.alpha {
            cfg.alpha = v;
        }
        if let Some(v) = self.beta {
            cfg.beta = v;
        }
        if let Some(v) = self.gamma_scale {
            cfg.gamma_scale = v;
        }
        if let Some(v) = self.heuristic {
            cfg.heuristic = match v {
                HeuristicArg::Distance => HeuristicMode::DistanceOnly,
                HeuristicArg::UcbAware => HeuristicMode::UcbAware,
            };
        }
        if let Some(v) = self.cost {
            cfg.cost = match v {
                CostArg::Ucb => CostMode::Ucb,
                CostArg::Euclidean => CostMode::Euclidean,
            };
        }
        cfg
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "gff")]
    policy: PolicyArg,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory (defaults to $GDM_OUT_ROOT/<scenario-name> or ./out/<scenario-name>).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep measured plan times in the logs (breaks byte-level determinism).
    #[arg(long, default_value_t = false)]
    timing: bool,
    #[command(flatten)]
    planner: PlannerArgs,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Comma-separated configuration names: baseline, f-ucb, fgf-euclidean,
    /// fgf-ucb, gff-euclidean, gff-ucb.
    #[arg(long, value_delimiter = ',', default_value = "gff-ucb,fgf-ucb,baseline")]
    configs: Vec<String>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for trial fan-out.
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = false)]
    timing: bool,
    #[command(flatten)]
    planner: PlannerArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Comma-separated batch sizes.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400,800")]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    planner: PlannerArgs,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "gff")]
    policy: PolicyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap the mission at this many seconds (default: the scenario budget).
    #[arg(long)]
    duration: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    planner: PlannerArgs,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn out_dir(flag: &Option<PathBuf>, scenario_name: &str) -> PathBuf {
    match flag {
        Some(p) => p.clone(),
        None => {
            let root = std::env::var("GDM_OUT_ROOT").unwrap_or_else(|_| "out".to_string());
            Path::new(&root).join(scenario_name)
        }
    }
}

fn load_scenario(path: &Path) -> Result<Scenario, String> {
    let sc = Scenario::load(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let issues = sc.validate();
    if issues.is_empty() {
        Ok(sc)
    } else {
        Err(issues
            .iter()
            .map(|i| format!("{}: {i}", path.display()))
            .collect::<Vec<_>>()
            .join("\n"))
    }
}

/// Metric-invariant audit over a produced log: monotone completeness,
/// nonnegative RMSE, time within budget.
fn audit_records(records: &[StepRecord], budget: f64) -> Result<(), String> {
    let mut last_completeness = 0.0;
    for r in records {
        if r.rmse < 0.0 {
            return Err(format!("step {}: negative RMSE", r.step));
        }
        if r.completeness < last_completeness - 1e-12 {
            return Err(format!("step {}: completeness decreased", r.step));
        }
        if r.t > budget + 1e-9 {
            return Err(format!("step {}: time {} exceeds budget {budget}", r.step, r.t));
        }
        last_completeness = r.completeness;
    }
    Ok(())
}

fn parse_campaign_config(token: &str, base: PlannerConfig) -> Result<CampaignConfig, String> {
    let (policy, cost) = match token {
        "baseline" => (GoalPolicy::Baseline, CostMode::Euclidean),
        "f-ucb" => (GoalPolicy::F, CostMode::Ucb),
        "fgf-ucb" => (GoalPolicy::Fgf, CostMode::Ucb),
        "fgf-euclidean" => (GoalPolicy::Fgf, CostMode::Euclidean),
        "gff-ucb" => (GoalPolicy::Gff, CostMode::Ucb),
        "gff-euclidean" => (GoalPolicy::Gff, CostMode::Euclidean),
        other => return Err(format!("unknown campaign config '{other}'")),
    };
    let mut planner = base;
    planner.cost = cost;
    Ok(CampaignConfig { id: token.to_string(), policy, planner })
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_validate(path: &Path) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let sc: Scenario = match serde_json::from_str(&text) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {}: parse failure: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let issues = sc.validate();
    if issues.is_empty() {
        println!("OK: {} ({})", sc.name, path.display());
        ExitCode::SUCCESS
    } else {
        for i in &issues {
            eprintln!("error: {}: {i}", path.display());
        }
        ExitCode::from(2)
    }
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode, String> {
    let sc = load_scenario(&args.scenario).map_err(|e| format!("validation\n{e}"))?;
    let planner = args.planner.resolve(&sc);
    let dir = out_dir(&args.out, &sc.name);
    if args.trials == 1 {
        let run = run_mission(&sc, &planner, args.policy.into(), args.seed)
            .map_err(|e| e.to_string())?;
        audit_records(&run.records, sc.budget_s).map_err(|e| format!("invariant: {e}"))?;
        let log = dir.join(format!("trial_{}.jsonl", args.seed));
        write(&log, &records_to_jsonl(&run.records, args.timing))?;
        println!("wrote {}", log.display());
        Ok(ExitCode::SUCCESS)
    } else {
        let cfg = CampaignConfig {
            id: format!("{:?}", GoalPolicy::from(args.policy)).to_lowercase(),
            policy: args.policy.into(),
            planner,
        };
        run_campaign(&sc, &[cfg], args.trials, args.seed, 1, &dir, args.timing, None)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_campaign(
    sc: &Scenario,
    configs: &[CampaignConfig],
    trials: usize,
    seed: u64,
    workers: usize,
    dir: &Path,
    timing: bool,
    baseline_id: Option<&str>,
) -> Result<ExitCode, String> {
    let result = monte_carlo(sc, configs, trials, seed, baseline_id, workers)
        .map_err(|e| e.to_string())?;
    for trial in &result.trials {
        if trial.failed {
            continue;
        }
        audit_records(&trial.steps, sc.budget_s)
            .map_err(|e| format!("invariant: {} seed {}: {e}", trial.config_id, trial.seed))?;
        let log = dir.join(format!("trial_{}_{}.jsonl", trial.config_id, trial.seed));
        write(&log, &records_to_jsonl(&trial.steps, timing))?;
    }
    let csv = dir.join("campaign.csv");
    write(&csv, &summary_to_csv(&result.summary))?;
    println!("wrote {}", csv.display());
    if result.summary.incomplete {
        eprintln!("warning: campaign summary excludes failed trials");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_campaign(args: &CampaignArgs) -> Result<ExitCode, String> {
    let sc = load_scenario(&args.scenario).map_err(|e| format!("validation\n{e}"))?;
    let planner = args.planner.resolve(&sc);
    let configs: Vec<CampaignConfig> = args
        .configs
        .iter()
        .map(|t| parse_campaign_config(t, planner))
        .collect::<Result<_, _>>()
        .map_err(|e| format!("validation\n{e}"))?;
    let baseline_id = configs
        .iter()
        .find(|c| c.policy == GoalPolicy::Baseline)
        .map(|c| c.id.clone());
    let dir = out_dir(&args.out, &sc.name);
    run_campaign(
        &sc,
        &configs,
        args.trials,
        args.seed,
        args.workers,
        &dir,
        args.timing,
        baseline_id.as_deref(),
    )
}

fn cmd_convergence(args: &ConvergenceArgs) -> Result<ExitCode, String> {
    let sc = load_scenario(&args.scenario).map_err(|e| format!("validation\n{e}"))?;
    let planner = args.planner.resolve(&sc);
    let result = convergence_study(&sc, &planner, &args.n_list, args.seeds, args.seed)
        .map_err(|e| e.to_string())?;
    let dir = out_dir(&args.out, &sc.name);
    let csv = dir.join("convergence.csv");
    write(&csv, &convergence_to_csv(&result))?;
    println!("wrote {} (oracle cost {})", csv.display(), result.oracle_cost);
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(args: &ExportArgs) -> Result<ExitCode, String> {
    let mut sc = load_scenario(&args.scenario).map_err(|e| format!("validation\n{e}"))?;
    if let Some(d) = args.duration {
        sc.budget_s = d.min(sc.budget_s);
    }
    let planner = args.planner.resolve(&sc);
    let run =
        run_mission(&sc, &planner, args.policy.into(), args.seed).map_err(|e| e.to_string())?;
    let dir = out_dir(&args.out, &sc.name);
    write(&dir.join("occupancy.pgm"), &run.state.grid.to_pgm())?;
    write(&dir.join("occupancy.meta.json"), &run.state.grid.sidecar_json())?;
    write(
        &dir.join("posterior.csv"),
        &run.state.posterior.to_csv(run.state.grid.lattice()),
    )?;
    if let Some(field) = &run.last_field {
        write(&dir.join("field.csv"), &field.to_csv())?;
    }
    if let Some(debug) = &run.last_plan_debug {
        write(&dir.join("plan_debug.json"), debug)?;
    }
    write(
        &dir.join("frontiers.json"),
        &frontiers_to_json(run.state.step, &run.last_frontiers),
    )?;
    write(&dir.join("metrics.jsonl"), &records_to_jsonl(&run.records, false))?;
    println!("wrote snapshots to {}", dir.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { scenario } => return cmd_validate(scenario),
        Command::Run(args) => cmd_run(args),
        Command::Campaign(args) => cmd_campaign(args),
        Command::Convergence(args) => cmd_convergence(args),
        Command::ExportSnapshot(args) => cmd_export(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            if msg.starts_with("validation") {
                ExitCode::from(2)
            } else if msg.starts_with("invariant") {
                ExitCode::from(4)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
