//! The planning-competition quality score.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::problem::Cost;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoreError {
    #[error("no best known cost for problem `{0}`")]
    MissingBest(String),
    #[error("best known cost for problem `{0}` is zero")]
    ZeroBest(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScoreRow {
    pub problem: String,
    pub best_known: Cost,
    pub found: Option<Cost>,
    /// `best_known / found`, zero when unsolved.
    #[serde(serialize_with = "ratio_as_f64")]
    pub ratio: Ratio<u64>,
    /// The found cost beat the supplied best known cost, which was replaced.
    pub new_best: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreTable {
    pub rows: Vec<ScoreRow>,
    /// `100 * mean(ratio)`.
    pub aggregate: f64,
}

fn ratio_as_f64<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(*r.numer() as f64 / *r.denom() as f64)
}

/// Scores found costs (`None` for unsolved) against best known costs.
pub fn ipc_score(
    results: &BTreeMap<String, Option<Cost>>,
    best_known: &BTreeMap<String, Cost>,
) -> Result<ScoreTable, ScoreError> {
    let mut rows = Vec::with_capacity(results.len());
    for (problem, &found) in results {
        let best = *best_known
            .get(problem)
            .ok_or_else(|| ScoreError::MissingBest(problem.clone()))?;
        if best == 0 {
            return Err(ScoreError::ZeroBest(problem.clone()));
        }
        let new_best = found.is_some_and(|f| f < best);
        let best = if new_best { found.unwrap_or(best) } else { best };
        let ratio = match found {
            Some(0) | None => Ratio::from_integer(0),
            Some(f) => Ratio::new(best, f),
        };
        rows.push(ScoreRow {
            problem: problem.clone(),
            best_known: best,
            found,
            ratio,
            new_best,
        });
    }
    let mut ratios: Vec<Ratio<u64>> = rows.iter().map(|r| r.ratio).collect();
    ratios.sort();
    let sum: f64 = ratios.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).sum();
    let aggregate = if rows.is_empty() { 0.0 } else { 100.0 * sum / rows.len() as f64 };
    Ok(ScoreTable { rows, aggregate })
}

/// Cheapest cost found for each problem across several configurations.
pub fn best_known_over<'a, I>(runs: I) -> BTreeMap<String, Cost>
where
    I: IntoIterator<Item = &'a BTreeMap<String, Option<Cost>>>,
{
    let mut best: BTreeMap<String, Cost> = BTreeMap::new();
    for results in runs {
        for (problem, found) in results {
            if let Some(f) = *found {
                best.entry(problem.clone())
                    .and_modify(|b| *b = (*b).min(f))
                    .or_insert(f);
            }
        }
    }
    best
}
