//! The cost-optimal footprint and expansion-set comparisons.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use super::oracle::{ExplicitGraph, OracleError};
use crate::problem::{Cost, Problem};
use crate::search::{RunResult, Termination};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FootprintError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("heuristic is inconsistent on an edge: h(u)={h_u} > {cost} + h(v)={h_v}")]
    Inconsistent { h_u: Cost, cost: Cost, h_v: Cost },
    #[error("heuristic overestimates: h={h} > h*={h_star}")]
    Inadmissible { h: Cost, h_star: Cost },
}

/// States classified by their best `f_c = g*_c + h_c` against the optimal
/// cost `f*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FootprintReport<S: Ord> {
    pub f_star: Cost,
    /// Best `f_c` strictly below `f*`: expanded by every proof.
    pub strict_set: BTreeSet<S>,
    /// Best `f_c` equal to `f*`: expansion depends on tie-breaking.
    pub boundary_set: BTreeSet<S>,
}

impl<S: Ord> FootprintReport<S> {
    pub fn strict_size(&self) -> usize {
        self.strict_set.len()
    }

    pub fn boundary_size(&self) -> usize {
        self.boundary_set.len()
    }
}

/// Checks `h(u) <= c(uv) + h(v)` on every edge out of a non-goal state and
/// `h <= h*` everywhere, for the model's admissible heuristic.
pub fn verify_admissible_consistent<P: Problem>(
    problem: &P,
    graph: &ExplicitGraph<P::State>,
) -> Result<(), FootprintError> {
    let h: Vec<Cost> = graph
        .states
        .iter()
        .map(|s| problem.heuristics(s).h_c_admissible)
        .collect();
    for (u, out) in graph.edges.iter().enumerate() {
        if graph.goal[u] {
            if h[u] != 0 {
                return Err(FootprintError::Inadmissible { h: h[u], h_star: 0 });
            }
            continue;
        }
        for &(v, c) in out {
            if h[u] > c + h[v] {
                return Err(FootprintError::Inconsistent {
                    h_u: h[u],
                    cost: c,
                    h_v: h[v],
                });
            }
        }
    }
    for (i, h_star) in graph.cost_to_go().into_iter().enumerate() {
        if let Some(h_star) = h_star {
            if h[i] > h_star {
                return Err(FootprintError::Inadmissible { h: h[i], h_star });
            }
        }
    }
    Ok(())
}

pub fn compute_footprint<P: Problem>(problem: &P, cap: u64) -> Result<FootprintReport<P::State>, FootprintError> {
    let graph = ExplicitGraph::explore(problem, cap)?;
    verify_admissible_consistent(problem, &graph)?;
    let g = graph.cost_to_reach();
    let f_star = (0..graph.len())
        .filter(|&i| graph.goal[i])
        .filter_map(|i| g[i])
        .min()
        .ok_or(OracleError::Unsolvable)?;
    let mut report = FootprintReport {
        f_star,
        strict_set: BTreeSet::new(),
        boundary_set: BTreeSet::new(),
    };
    for (i, s) in graph.states.iter().enumerate() {
        let Some(g) = g[i] else { continue };
        let f = g + problem.heuristics(s).h_c_admissible;
        if f < f_star {
            report.strict_set.insert(s.clone());
        } else if f == f_star {
            report.boundary_set.insert(s.clone());
        }
    }
    Ok(report)
}

/// The set of states a finished run expanded, tagged with its instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionSet<S: Ord> {
    pub instance: String,
    pub proved: bool,
    pub states: BTreeSet<S>,
}

impl<S: Ord + Clone> ExpansionSet<S> {
    /// Requires a run made with expansion recording on.
    pub fn from_run<A>(instance: impl Into<String>, run: &RunResult<S, A>) -> Self {
        ExpansionSet {
            instance: instance.into(),
            proved: run.metrics.termination == Termination::Proved,
            states: run.expanded.iter().map(|e| e.state.clone()).collect(),
        }
    }

    pub fn restricted_to(&self, keep: &BTreeSet<S>) -> Self {
        ExpansionSet {
            instance: self.instance.clone(),
            proved: self.proved,
            states: self.states.intersection(keep).cloned().collect(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompareError {
    #[error("runs are on different instances: `{0}` vs `{1}`")]
    DifferentInstances(String, String),
    #[error("run on `{0}` did not finish an optimality proof")]
    NotProved(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetComparison<S> {
    pub equal_states: bool,
    pub only_in_a: Vec<S>,
    pub only_in_b: Vec<S>,
}

pub fn expansion_set_compare<S: Ord + Clone + Debug + Hash>(
    a: &ExpansionSet<S>,
    b: &ExpansionSet<S>,
) -> Result<SetComparison<S>, CompareError> {
    if a.instance != b.instance {
        return Err(CompareError::DifferentInstances(a.instance.clone(), b.instance.clone()));
    }
    for run in [a, b] {
        if !run.proved {
            return Err(CompareError::NotProved(run.instance.clone()));
        }
    }
    let only_in_a: Vec<S> = a.states.difference(&b.states).cloned().collect();
    let only_in_b: Vec<S> = b.states.difference(&a.states).cloned().collect();
    Ok(SetComparison {
        equal_states: only_in_a.is_empty() && only_in_b.is_empty(),
        only_in_a,
        only_in_b,
    })
}
