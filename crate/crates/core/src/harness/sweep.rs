//! Goal sweeps over the overflow counter.

use num_rational::Ratio;
use serde::Serialize;

use crate::domains::CounterInstance;
use crate::eval::EvaluatorConfig;
use crate::search::{run_search, Budget, SearchError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub goal: u64,
    /// Expansions before the first incumbent under each evaluator.
    pub first: Option<u64>,
    pub second: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub k: u32,
    pub first: String,
    pub second: String,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    fn fraction(&self, goal: u64) -> Ratio<u64> {
        Ratio::new(goal, 1 << self.k)
    }

    /// Largest goal fraction up to which the second evaluator needs at
    /// least `factor` times the first's discovery expansions (less one) at
    /// every nonzero goal.
    pub fn ratio_holds_until(&self, factor: u64) -> Option<Ratio<u64>> {
        let mut last = None;
        for r in self.rows.iter().filter(|r| r.goal > 0) {
            match (r.first, r.second) {
                (Some(a), Some(b)) if b + 1 >= factor * a => last = Some(r.goal),
                _ => break,
            }
        }
        last.map(|g| self.fraction(g))
    }

    /// Smallest goal fraction at which the second evaluator discovers with
    /// strictly fewer expansions than the first.
    pub fn lead_change(&self) -> Option<Ratio<u64>> {
        self.rows
            .iter()
            .find(|r| match (r.first, r.second) {
                (Some(a), Some(b)) => b < a,
                (None, Some(_)) => true,
                _ => false,
            })
            .map(|r| self.fraction(r.goal))
    }
}

/// Runs both evaluators on every goal of `counter(k)`.
pub fn sweep_goals(
    k: u32,
    first: &EvaluatorConfig,
    second: &EvaluatorConfig,
    budget: &Budget,
) -> Result<SweepReport, SearchError> {
    let mut rows = Vec::with_capacity(1 << k);
    for goal in 0..1u64 << k {
        let counter = CounterInstance::new(k, goal)?;
        let a = run_search(&counter, first, budget)?.metrics.discovery_expansions();
        let b = run_search(&counter, second, budget)?.metrics.discovery_expansions();
        rows.push(SweepRow {
            goal,
            first: a,
            second: b,
        });
    }
    Ok(SweepReport {
        k,
        first: first.label(),
        second: second.label(),
        rows,
    })
}
