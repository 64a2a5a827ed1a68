use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use costlab::analysis::{
    compute_footprint, expansion_set_compare, oracle_solve, CompareError, ExpansionSet, FootprintError, OracleError,
};
use costlab::domains::count_reachable;
use costlab::harness::{
    best_known_over, ipc_score, read_results, run_experiment, summarize, sweep_goals, ConfigError, EvaluatorSpec,
    ExperimentConfig, HarnessError, ResultLine,
};
use costlab::search::{Budget, Search, Termination};
use costlab::with_instance;

const INVALID_CONFIG: u8 = 1;
const BUDGET_EXHAUSTED: u8 = 2;
const INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(name = "costlab", version, about = "Cost-based versus size-based best-first search experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Experiment config (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for result files.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    max_expansions: Option<u64>,
    #[arg(long, global = true)]
    max_seconds: Option<u64>,
    /// Keep searching after the first solution until optimality is proved.
    #[arg(long, global = true)]
    prove: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured experiment and stream result files.
    Run,
    /// Compare discovery expansions of two evaluators over every counter goal.
    Sweep {
        #[arg(long, default_value_t = 12)]
        k: u32,
        #[arg(long, default_value = "cost")]
        first: String,
        #[arg(long, default_value = "size")]
        second: String,
    },
    /// Score result files per evaluator with the competition quality metric.
    Score {
        /// Result files or directories of them.
        inputs: Vec<PathBuf>,
        /// JSON object of best known costs per instance.
        #[arg(long)]
        best_known: Option<PathBuf>,
    },
    /// Solve the configured instance exhaustively.
    Oracle {
        #[arg(long, default_value_t = 5_000_000)]
        cap: u64,
    },
    /// Classify states against the optimal cost.
    Footprint {
        #[arg(long, default_value_t = 5_000_000)]
        cap: u64,
    },
    /// Compare the expansion sets of two proof-completing configurations.
    Compare {
        /// Second configuration; must describe the same instance.
        #[arg(long)]
        other: PathBuf,
    },
    /// Count reachable states of the configured instance.
    CountStates {
        #[arg(long, default_value_t = 50_000_000)]
        cap: u64,
    },
    /// Collect result files into a CSV table.
    Summarize { inputs: Vec<PathBuf> },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::new(INVALID_CONFIG, e)
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = match e {
            HarnessError::Invariant(_) => INVARIANT,
            _ => INVALID_CONFIG,
        };
        Failure::new(code, e)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::CapExceeded { .. } => BUDGET_EXHAUSTED,
            OracleError::Unsolvable => 0,
        };
        Failure::new(code, e)
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("costlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Run => {
            let config = load(g)?;
            let outcomes = run_experiment(&config, &g.out)?;
            let mut starved = false;
            for o in &outcomes {
                println!("{}", serde_json::to_string(&o.summary).expect("summary serializes"));
                starved |= o.summary.termination == Termination::Budget && o.summary.best_cost.is_none();
            }
            if starved {
                return Err(Failure::new(BUDGET_EXHAUSTED, "budget exhausted without a solution"));
            }
            Ok(())
        }
        Command::Sweep { k, first, second } => {
            let first = EvaluatorSpec::named(first).build()?;
            let second = EvaluatorSpec::named(second).build()?;
            let budget = Budget {
                max_expansions: Some(g.max_expansions.unwrap_or(4 << k)),
                ..Budget::default()
            };
            let report = sweep_goals(*k, &first, &second, &budget).map_err(|e| Failure::new(INVALID_CONFIG, e))?;
            fs::create_dir_all(&g.out).map_err(|e| Failure::new(INVALID_CONFIG, e))?;
            let path = g.out.join(format!("sweep-k{k}.json"));
            fs::write(&path, serde_json::to_string_pretty(&report).expect("report serializes"))
                .map_err(|e| Failure::new(INVALID_CONFIG, e))?;
            let frac = |r: Option<num_rational::Ratio<u64>>| r.map(|r| *r.numer() as f64 / *r.denom() as f64);
            println!(
                "{}",
                json!({
                    "report": path,
                    "ratio_two_until": frac(report.ratio_holds_until(2)),
                    "lead_change": frac(report.lead_change()),
                })
            );
            Ok(())
        }
        Command::Score { inputs, best_known } => score(inputs, best_known.as_deref()),
        Command::Oracle { cap } => {
            let config = load(g)?;
            let report = with_instance!(&config.instance()?, p => {
                let r = oracle_solve(p, *cap)?;
                json!({
                    "instance": costlab::problem::Problem::describe(p),
                    "optimal_cost": r.optimal_cost,
                    "optimal_size_among_cheapest": r.optimal_size_among_cheapest,
                    "smallest_size": r.smallest_size,
                    "states_seen": r.states_seen,
                    "plan": r.plan.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            });
            println!("{report}");
            Ok(())
        }
        Command::Footprint { cap } => {
            let config = load(g)?;
            let report = with_instance!(&config.instance()?, p => {
                let r = compute_footprint(p, *cap).map_err(footprint_failure)?;
                json!({
                    "f_star": r.f_star,
                    "strict_size": r.strict_size(),
                    "boundary_size": r.boundary_size(),
                })
            });
            println!("{report}");
            Ok(())
        }
        Command::Compare { other } => {
            let a = load(g)?;
            let b = load_path(other, g)?;
            let (ia, ib) = (a.instance()?, b.instance()?);
            let report = match (&ia, &ib) {
                (costlab::harness::Instance::Counter(p), costlab::harness::Instance::Counter(q)) => {
                    compare_runs(p, q, &a, &b)?
                }
                (costlab::harness::Instance::Tree(p), costlab::harness::Instance::Tree(q)) => {
                    compare_runs(p, q, &a, &b)?
                }
                (costlab::harness::Instance::Travel(p), costlab::harness::Instance::Travel(q)) => {
                    compare_runs(p, q, &a, &b)?
                }
                _ => return Err(Failure::new(INVALID_CONFIG, "configs name different domains")),
            };
            println!("{report}");
            Ok(())
        }
        Command::CountStates { cap } => {
            let config = load(g)?;
            let n = with_instance!(&config.instance()?, p => count_reachable(p, *cap))
                .map_err(|e| Failure::new(BUDGET_EXHAUSTED, e))?;
            println!("{}", json!({ "reachable_states": n }));
            Ok(())
        }
        Command::Summarize { inputs } => {
            print!("{}", summarize(&result_files(inputs)));
            Ok(())
        }
    }
}

fn footprint_failure(e: FootprintError) -> Failure {
    match e {
        FootprintError::Oracle(o) => o.into(),
        other => Failure::new(INVARIANT, other),
    }
}

fn load(g: &Global) -> Result<ExperimentConfig, Failure> {
    let path = g
        .config
        .as_deref()
        .ok_or_else(|| Failure::new(INVALID_CONFIG, "this command needs --config"))?;
    load_path(path, g)
}

fn load_path(path: &Path, g: &Global) -> Result<ExperimentConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(INVALID_CONFIG, format!("{}: {e}", path.display())))?;
    let mut value: Value = serde_json::from_str(&text).map_err(|e| Failure::from(ConfigError::Syntax(e.to_string())))?;
    if let Some(obj) = value.as_object_mut() {
        if let Some(seed) = g.seed {
            obj.insert("seed".into(), json!(seed));
        }
        let budget = obj.entry("budget").or_insert_with(|| json!({}));
        if let Some(budget) = budget.as_object_mut() {
            if let Some(n) = g.max_expansions {
                budget.insert("max_expansions".into(), json!(n));
            }
            if let Some(s) = g.max_seconds {
                budget.insert("max_seconds".into(), json!(s));
            }
            if g.prove {
                budget.insert("prove".into(), json!(true));
            }
        }
    }
    Ok(ExperimentConfig::from_json(&value.to_string())?)
}

fn compare_runs<P: costlab::problem::Problem>(
    p: &P,
    q: &P,
    a: &ExperimentConfig,
    b: &ExperimentConfig,
) -> Result<Value, Failure> {
    let run = |problem: &P, config: &ExperimentConfig| -> Result<ExpansionSet<P::State>, Failure> {
        let budget = Budget {
            prove_optimality: true,
            ..config.budget.build()?
        };
        let result = Search::new(problem, config.evaluator.build()?, budget)
            .record_expansions(true)
            .run()
            .map_err(|e| Failure::new(INVALID_CONFIG, e))?;
        Ok(ExpansionSet::from_run(problem.describe(), &result))
    };
    let (sa, sb) = (run(p, a)?, run(q, b)?);
    let cmp = expansion_set_compare(&sa, &sb).map_err(|e| match e {
        CompareError::DifferentInstances(..) => Failure::new(INVALID_CONFIG, e),
        CompareError::NotProved(_) => Failure::new(BUDGET_EXHAUSTED, e),
    })?;
    Ok(json!({
        "instance": sa.instance,
        "equal_states": cmp.equal_states,
        "expanded_a": sa.states.len(),
        "expanded_b": sb.states.len(),
        "only_in_a": cmp.only_in_a.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>(),
        "only_in_b": cmp.only_in_b.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>(),
    }))
}

fn result_files(inputs: &[PathBuf]) -> Vec<PathBuf> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            if let Ok(entries) = fs::read_dir(input) {
                let mut found: Vec<PathBuf> = entries
                    .filter_map(Result::ok)
                    .map(|e| e.path())
                    .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
                    .collect();
                found.sort();
                files.extend(found);
            }
        } else {
            files.push(input.clone());
        }
    }
    files
}

fn score(inputs: &[PathBuf], best_known: Option<&Path>) -> Result<(), Failure> {
    let mut by_evaluator: BTreeMap<String, BTreeMap<String, Option<u64>>> = BTreeMap::new();
    for file in result_files(inputs) {
        let Ok(lines) = read_results(&file) else {
            log::warn!("skipping {}", file.display());
            continue;
        };
        for line in lines {
            if let ResultLine::Metrics(m) = line {
                let slot = by_evaluator.entry(m.evaluator).or_default().entry(m.instance).or_insert(None);
                *slot = match (*slot, m.best_cost) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
            }
        }
    }
    let mut best = best_known_over(by_evaluator.values());
    if let Some(path) = best_known {
        let text = fs::read_to_string(path).map_err(|e| Failure::new(INVALID_CONFIG, e))?;
        let given: BTreeMap<String, u64> =
            serde_json::from_str(&text).map_err(|e| Failure::new(INVALID_CONFIG, e))?;
        best.extend(given);
    }
    for results in by_evaluator.values_mut() {
        results.retain(|problem, _| {
            let known = best.contains_key(problem);
            if !known {
                log::warn!("no configuration solved {problem}; leaving it out");
            }
            known
        });
    }
    let mut tables = BTreeMap::new();
    for (evaluator, results) in &by_evaluator {
        let table = ipc_score(results, &best).map_err(|e| Failure::new(INVALID_CONFIG, e))?;
        tables.insert(evaluator.clone(), table);
    }
    println!("{}", serde_json::to_string_pretty(&tables).expect("tables serialize"));
    Ok(())
}
