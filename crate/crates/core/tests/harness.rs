mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use common::{counter_discovery, Order};
use costlab::domains::{make_ferry, CounterInstance};
use costlab::eval::{EvalKind, EvaluatorConfig};
use costlab::harness::{
    best_known_over, ipc_score, read_results, run_experiment, summarize, sweep_goals, ExperimentConfig, ResultLine,
    SUMMARY_HEADER,
};
use costlab::problem::{Cost, Problem};
use costlab::search::{run_search, Budget, Termination};

fn config(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_json(text).unwrap()
}

fn ferry_config() -> ExperimentConfig {
    config(r#"{"domain":"ferry","domain_params":{"n":3,"stranded":2,"idle":2},"evaluator":{"evaluator":"size"},"budget":{"prove":true}}"#)
}

#[test]
fn reruns_write_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = ferry_config();
    let ra = run_experiment(&c, a.path()).unwrap();
    let rb = run_experiment(&c, b.path()).unwrap();
    assert_eq!(ra.len(), 1);
    assert_eq!(ra[0].path.file_name(), rb[0].path.file_name());
    assert_eq!(fs::read(&ra[0].path).unwrap(), fs::read(&rb[0].path).unwrap());
    assert_eq!(ra[0].path.file_name().unwrap().to_str().unwrap(), format!("ferry-{}.jsonl", c.hash()));
}

#[test]
fn result_files_stream_replayable_incumbents() {
    let dir = tempfile::tempdir().unwrap();
    let c = ferry_config();
    let out = run_experiment(&c, dir.path()).unwrap();
    let lines = read_results(&out[0].path).unwrap();
    let ferry = make_ferry(3, 2, 2).unwrap();
    let mut incumbents = 0;
    let mut last_cost = Cost::MAX;
    for line in &lines[..lines.len() - 1] {
        let ResultLine::Incumbent(inc) = line else { panic!("metrics line before the end") };
        assert!(inc.cost < last_cost);
        last_cost = inc.cost;
        assert!(inc.wall_time_ms.is_none());
        let mut state = ferry.initial_state();
        let mut cost = 0;
        for name in &inc.plan {
            let mut edges = Vec::new();
            ferry.successors(&state, &mut edges);
            let edge = edges.into_iter().find(|e| &e.action.to_string() == name).expect("action applies");
            cost += edge.cost;
            state = edge.to;
        }
        assert!(ferry.is_goal(&state));
        assert_eq!(cost, inc.cost);
        incumbents += 1;
    }
    let ResultLine::Metrics(m) = lines.last().unwrap() else { panic!("no metrics line") };
    assert_eq!(m.incumbents, incumbents);
    assert_eq!(m.termination, Termination::Proved);
    assert_eq!(m.best_cost, Some(last_cost));
    assert_eq!(m.proof_expansions, Some(m.expansions));
    assert_eq!(m.config_hash, c.hash());
}

#[test]
fn timing_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = ferry_config();
    c.emit_timing = true;
    let out = run_experiment(&c, dir.path()).unwrap();
    assert!(out[0].summary.wall_time_ms.is_some());
    let text = fs::read_to_string(&out[0].path).unwrap();
    assert!(text.lines().all(|l| l.contains("wall_time_ms")));
}

#[test]
fn zero_budget_runs_report_budget() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(r#"{"domain":"counter","domain_params":{"k":4,"goal":14},"evaluator":{"evaluator":"cost"},"budget":{"max_expansions":0}}"#);
    let out = run_experiment(&c, dir.path()).unwrap();
    let lines = read_results(&out[0].path).unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(out[0].summary.termination, Termination::Budget);
    assert_eq!(out[0].summary.best_cost, None);
    assert_eq!(out[0].summary.discovery_expansions, None);
}

#[test]
fn goal_sweeps_summarize_one_row_per_goal() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(r#"{"domain":"counter","domain_params":{"k":4,"goals":"all"},"evaluator":{"evaluator":"size"},"budget":{"prove":true}}"#);
    let out = run_experiment(&c, dir.path()).unwrap();
    assert_eq!(out.len(), 16);
    let files: Vec<PathBuf> = out.iter().map(|o| o.path.clone()).collect();
    let csv = summarize(&files);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], SUMMARY_HEADER.join(","));
    assert_eq!(rows.len(), 17);
    for o in &out {
        let goal = o.summary.domain_params["goal"].as_u64().unwrap();
        assert_eq!(o.summary.discovery_expansions, Some(counter_discovery(4, goal, Order::Size)));
    }
}

#[test]
fn summaries_sort_and_skip_bad_files() {
    assert_eq!(summarize::<PathBuf>(&[]), format!("{}\n", SUMMARY_HEADER.join(",")));
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for text in [
        r#"{"domain":"swap","domain_params":{"n":2},"evaluator":{"evaluator":"cost"},"budget":{"prove":true}}"#,
        r#"{"domain":"counter","domain_params":{"k":3,"goal":5},"evaluator":{"evaluator":"cost"},"budget":{"prove":true}}"#,
        r#"{"domain":"counter","domain_params":{"k":3,"goal":6},"evaluator":{"evaluator":"cost"},"budget":{"prove":true}}"#,
    ] {
        files.extend(run_experiment(&config(text), dir.path()).unwrap().into_iter().map(|o| o.path));
    }
    let broken = dir.path().join("broken.jsonl");
    fs::write(&broken, "{not json\n").unwrap();
    let truncated = dir.path().join("truncated.jsonl");
    fs::write(&truncated, "").unwrap();
    files.push(broken);
    files.push(truncated);
    files.push(dir.path().join("missing.jsonl"));
    let csv = summarize(&files);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let keys: Vec<(String, String)> = rows
        .iter()
        .map(|r| {
            let mut f = r.split(',');
            let hash = f.next().unwrap().to_string();
            (f.next().unwrap().to_string(), hash)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys[0].0, "counter");
    assert_eq!(keys[2].0, "swap");
}

#[test]
fn small_sweep_follows_the_simulation() {
    let budget = Budget::prove();
    let r = sweep_goals(6, &EvaluatorConfig::new(EvalKind::Cost), &EvaluatorConfig::new(EvalKind::Size), &budget).unwrap();
    assert_eq!(r.rows.len(), 64);
    for row in &r.rows {
        assert_eq!(row.first, Some(counter_discovery(6, row.goal, Order::Cost)));
        assert_eq!(row.second, Some(counter_discovery(6, row.goal, Order::Size)));
    }
    assert_eq!(r.rows[0].first, Some(0));
    assert_eq!(r.rows[0].second, Some(0));
}

fn discovery(k: u32, goal: u64, kind: EvalKind) -> u64 {
    let c = CounterInstance::new(k, goal).unwrap();
    run_search(&c, &EvaluatorConfig::new(kind), &Budget::prove()).unwrap().metrics.discovery_expansions().unwrap()
}

#[test]
fn quarter_goal_costs_cost_search_half_the_effort() {
    let goal = 1024;
    let (dc, ds) = (discovery(12, goal, EvalKind::Cost), discovery(12, goal, EvalKind::Size));
    let ratio = dc as f64 / ds as f64;
    assert!((0.4..=0.6).contains(&ratio), "{dc} / {ds}");
}

#[test]
fn late_goal_favours_size_search() {
    let goal = 3686;
    let (dc, ds) = (discovery(12, goal, EvalKind::Cost), discovery(12, goal, EvalKind::Size));
    assert_eq!(dc, counter_discovery(12, goal, Order::Cost));
    assert_eq!(ds, counter_discovery(12, goal, Order::Size));
    assert!(ds * 3 < dc, "{dc} vs {ds}");
}

#[test]
fn competition_scores_from_runs() {
    let runs: Vec<BTreeMap<String, Option<Cost>>> = vec![
        BTreeMap::from([("a".into(), Some(10)), ("b".into(), Some(40)), ("c".into(), None)]),
        BTreeMap::from([("a".into(), Some(20)), ("b".into(), Some(20)), ("c".into(), Some(30))]),
    ];
    let best = best_known_over(&runs);
    assert_eq!(best, BTreeMap::from([("a".into(), 10), ("b".into(), 20), ("c".into(), 30)]));
    let first = ipc_score(&runs[0], &best).unwrap();
    assert!((first.aggregate - 50.0).abs() < 1e-9);
    let second = ipc_score(&runs[1], &best).unwrap();
    assert!((second.aggregate - 100.0 * (0.5 + 1.0 + 1.0) / 3.0).abs() < 1e-9);
}
