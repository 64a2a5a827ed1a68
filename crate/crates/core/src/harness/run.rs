//! Running configured experiments and streaming their results.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::config::{ConfigError, ExperimentConfig};
use crate::problem::{replay, Cost, Problem};
use crate::search::{IncumbentRecord, RunMetrics, Search, SearchError, Termination};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("search rejected the instance: {0}")]
    Search(#[from] SearchError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// One line of a result file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ResultLine {
    Incumbent(IncumbentLine),
    Metrics(Box<MetricsLine>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncumbentLine {
    pub cost: Cost,
    pub size: u64,
    pub expansions: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub plan: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsLine {
    pub config_hash: String,
    pub domain: String,
    pub domain_params: Value,
    pub instance: String,
    pub evaluator: String,
    pub seed: u64,
    pub expansions: u64,
    pub generations: u64,
    pub re_expansions: u64,
    pub reopens_skipped: u64,
    pub duplicates_dropped: u64,
    pub pruned_by_bound: u64,
    pub peak_open: u64,
    pub peak_closed: u64,
    pub termination: Termination,
    pub best_cost: Option<Cost>,
    pub discovery_expansions: Option<u64>,
    /// Total expansions when the run finished an optimality proof.
    pub proof_expansions: Option<u64>,
    pub incumbents: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// What one concrete run produced.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub path: PathBuf,
    pub summary: MetricsLine,
}

/// Runs every concrete config of `config` (one per goal of a sweep),
/// writing `<domain>-<hash>.jsonl` files into `out_dir`.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<Vec<RunOutcome>, HarnessError> {
    config.validate()?;
    fs::create_dir_all(out_dir)?;
    config
        .expand()?
        .iter()
        .map(|c| run_single(c, out_dir))
        .collect()
}

fn run_single(config: &ExperimentConfig, out_dir: &Path) -> Result<RunOutcome, HarnessError> {
    let instance = config.instance()?;
    let hash = config.hash();
    let path = out_dir.join(format!("{}-{hash}.jsonl", config.domain));
    let mut out = BufWriter::new(File::create(&path)?);
    let summary = crate::with_instance!(&instance, p => stream_run(p, config, &hash, &mut out)?);
    out.flush()?;
    Ok(RunOutcome { path, summary })
}

fn stream_run<P: Problem, W: Write>(
    problem: &P,
    config: &ExperimentConfig,
    hash: &str,
    out: &mut W,
) -> Result<MetricsLine, HarnessError> {
    let evaluator = config.evaluator.build()?;
    let budget = config.budget.build()?;
    let timing = config.emit_timing;
    let mut io_error = None;
    let mut invariant = None;
    let run = Search::new(problem, evaluator, budget).run_with(|record: &IncumbentRecord<P::Action>| {
        match replay(problem, &record.plan) {
            Some((state, cost)) if cost == record.cost && problem.is_goal(&state) => {}
            _ => {
                invariant.get_or_insert_with(|| format!("incumbent of cost {} does not replay", record.cost));
            }
        }
        if io_error.is_some() {
            return;
        }
        let line = ResultLine::Incumbent(IncumbentLine {
            cost: record.cost,
            size: record.size,
            expansions: record.expansions_at_discovery,
            wall_time_ms: timing.then_some(record.wall_time_at_discovery.as_millis() as u64),
            plan: record.plan.iter().map(ToString::to_string).collect(),
        });
        if let Err(e) = write_line(out, &line) {
            io_error = Some(e);
        }
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if let Some(msg) = invariant {
        return Err(HarnessError::Invariant(msg));
    }
    let summary = metrics_line(config, hash, &problem.describe(), &evaluator.label(), &run.metrics, run.best_cost());
    write_line(out, &ResultLine::Metrics(Box::new(summary.clone())))?;
    Ok(summary)
}

fn write_line<W: Write>(out: &mut W, line: &ResultLine) -> io::Result<()> {
    serde_json::to_writer(&mut *out, line)?;
    out.write_all(b"\n")?;
    out.flush()
}

fn metrics_line(
    config: &ExperimentConfig,
    hash: &str,
    instance: &str,
    evaluator: &str,
    m: &RunMetrics,
    best_cost: Option<Cost>,
) -> MetricsLine {
    MetricsLine {
        config_hash: hash.to_string(),
        domain: config.domain.clone(),
        domain_params: serde_json::to_value(&config.domain_params).expect("params serialize"),
        instance: instance.to_string(),
        evaluator: evaluator.to_string(),
        seed: config.seed,
        expansions: m.expansions,
        generations: m.generations,
        re_expansions: m.re_expansions,
        reopens_skipped: m.reopens_skipped,
        duplicates_dropped: m.duplicates_dropped,
        pruned_by_bound: m.pruned_by_bound,
        peak_open: m.peak_open,
        peak_closed: m.peak_closed,
        termination: m.termination,
        best_cost,
        discovery_expansions: m.discovery_expansions(),
        proof_expansions: (m.termination == Termination::Proved).then_some(m.expansions),
        incumbents: m.anytime_profile.len(),
        wall_time_ms: config.emit_timing.then_some(m.wall_time.as_millis() as u64),
    }
}

/// Reads a result file back; stops at the first malformed line.
pub fn read_results(path: &Path) -> io::Result<Vec<ResultLine>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)))
        .collect()
}
