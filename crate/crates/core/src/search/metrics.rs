use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::problem::Cost;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Open list exhausted with an incumbent: the incumbent is optimal.
    Proved,
    /// An expansion or time limit stopped the run.
    Budget,
    /// Open list exhausted without reaching a goal.
    ExhaustedUnsolvable,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Proved => "proved",
            Termination::Budget => "budget",
            Termination::ExhaustedUnsolvable => "exhausted-unsolvable",
        })
    }
}

/// A solution reported during a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncumbentRecord<A> {
    pub plan: Vec<A>,
    pub cost: Cost,
    pub size: u64,
    pub expansions_at_discovery: u64,
    pub wall_time_at_discovery: Duration,
}

impl<A> IncumbentRecord<A> {
    pub fn point(&self) -> AnytimePoint {
        AnytimePoint {
            cost: self.cost,
            size: self.size,
            expansions: self.expansions_at_discovery,
            wall_time: self.wall_time_at_discovery,
        }
    }
}

/// An incumbent without its plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnytimePoint {
    pub cost: Cost,
    pub size: u64,
    pub expansions: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunMetrics {
    pub expansions: u64,
    pub generations: u64,
    pub re_expansions: u64,
    /// Cheaper re-found paths dropped under [`super::ReopenPolicy::Ignore`].
    pub reopens_skipped: u64,
    pub duplicates_dropped: u64,
    pub pruned_by_bound: u64,
    pub peak_open: u64,
    pub peak_closed: u64,
    pub wall_time: Duration,
    pub termination: Termination,
    pub anytime_profile: Vec<AnytimePoint>,
}

impl RunMetrics {
    pub(crate) fn new() -> Self {
        RunMetrics {
            expansions: 0,
            generations: 0,
            re_expansions: 0,
            reopens_skipped: 0,
            duplicates_dropped: 0,
            pruned_by_bound: 0,
            peak_open: 0,
            peak_closed: 0,
            wall_time: Duration::ZERO,
            termination: Termination::Budget,
            anytime_profile: Vec::new(),
        }
    }

    /// Expansions until the first incumbent, if any.
    pub fn discovery_expansions(&self) -> Option<u64> {
        self.anytime_profile.first().map(|p| p.expansions)
    }

    /// Same metrics with wall-clock fields zeroed, for determinism checks.
    pub fn without_timing(&self) -> RunMetrics {
        RunMetrics {
            wall_time: Duration::ZERO,
            anytime_profile: self
                .anytime_profile
                .iter()
                .map(|p| AnytimePoint {
                    wall_time: Duration::ZERO,
                    ..*p
                })
                .collect(),
            ..self.clone()
        }
    }
}
