//! The implicit-graph contract every benchmark domain implements.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use thiserror::Error;

/// Edge costs are integral cost units.
pub type Cost = u64;

/// One outgoing edge produced by the child generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge<A, S> {
    pub action: A,
    pub cost: Cost,
    pub to: S,
}

/// The four heuristic estimates a domain supplies for a state.
///
/// `h_c` and `h_s`/`h_s_hat` feed the evaluators and may be inadmissible.
/// `h_c_admissible` is only used for branch-and-bound pruning and must never
/// exceed the true cost-to-go.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Heuristics {
    pub h_c: Cost,
    pub h_s: u64,
    pub h_s_hat: u64,
    pub h_c_admissible: Cost,
}

impl Heuristics {
    pub const ZERO: Heuristics = Heuristics {
        h_c: 0,
        h_s: 0,
        h_s_hat: 0,
        h_c_admissible: 0,
    };
}

/// An implicitly represented search problem.
///
/// States must be canonical: two states are equal iff they encode the same
/// domain configuration. The total order only serves determinism (sorted
/// reports, set comparisons).
pub trait Problem {
    type State: Clone + Eq + Hash + Ord + Debug;
    type Action: Clone + Debug + Display + PartialEq;

    fn initial_state(&self) -> Self::State;

    fn is_goal(&self, state: &Self::State) -> bool;

    /// Appends the outgoing edges of `state` to `out` in the domain's
    /// canonical order.
    fn successors(&self, state: &Self::State, out: &mut Vec<Edge<Self::Action, Self::State>>);

    fn heuristics(&self, state: &Self::State) -> Heuristics;

    /// Every action type of the instance with its cost.
    fn action_costs(&self) -> Vec<(String, Cost)>;

    /// Stable identifier of the instance, used to pair runs in reports.
    fn describe(&self) -> String;

    fn max_edge_cost(&self) -> Cost {
        self.action_costs().iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    fn min_edge_cost(&self) -> Cost {
        self.action_costs().iter().map(|&(_, c)| c).min().unwrap_or(0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("instance declares no action types")]
    NoActions,
    #[error("action `{0}` has zero cost")]
    ZeroCost(String),
    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParameter { key: &'static str, reason: String },
}

/// Rejects instances with zero-cost actions.
pub fn validate<P: Problem + ?Sized>(problem: &P) -> Result<(), ModelError> {
    let costs = problem.action_costs();
    if costs.is_empty() {
        return Err(ModelError::NoActions);
    }
    if let Some((name, _)) = costs.iter().find(|(_, c)| *c == 0) {
        return Err(ModelError::ZeroCost(name.clone()));
    }
    Ok(())
}

/// Replays `plan` from the initial state, returning the reached state with
/// the accumulated cost, or `None` if some action is not applicable.
pub fn replay<P: Problem>(problem: &P, plan: &[P::Action]) -> Option<(P::State, Cost)> {
    let mut state = problem.initial_state();
    let mut cost = 0;
    let mut edges = Vec::new();
    for action in plan {
        edges.clear();
        problem.successors(&state, &mut edges);
        let edge = edges.drain(..).find(|e| &e.action == action)?;
        cost += edge.cost;
        state = edge.to;
    }
    Some((state, cost))
}

/// Wraps a problem and replaces its search heuristics by zero, keeping the
/// admissible pruning heuristic. Turns A* into uniform-cost search.
#[derive(Clone, Debug)]
pub struct Blind<P>(pub P);

impl<P: Problem> Problem for Blind<P> {
    type State = P::State;
    type Action = P::Action;

    fn initial_state(&self) -> P::State {
        self.0.initial_state()
    }
    fn is_goal(&self, state: &P::State) -> bool {
        self.0.is_goal(state)
    }
    fn successors(&self, state: &P::State, out: &mut Vec<Edge<P::Action, P::State>>) {
        self.0.successors(state, out)
    }
    fn heuristics(&self, state: &P::State) -> Heuristics {
        Heuristics {
            h_c_admissible: self.0.heuristics(state).h_c_admissible,
            ..Heuristics::ZERO
        }
    }
    fn action_costs(&self) -> Vec<(String, Cost)> {
        self.0.action_costs()
    }
    fn describe(&self) -> String {
        self.0.describe()
    }
}

/// Wraps a problem so that the evaluators' cost heuristic is the admissible
/// one. Used when a run must be an A* run in the classical sense.
#[derive(Clone, Debug)]
pub struct AdmissibleOnly<P>(pub P);

impl<P: Problem> Problem for AdmissibleOnly<P> {
    type State = P::State;
    type Action = P::Action;

    fn initial_state(&self) -> P::State {
        self.0.initial_state()
    }
    fn is_goal(&self, state: &P::State) -> bool {
        self.0.is_goal(state)
    }
    fn successors(&self, state: &P::State, out: &mut Vec<Edge<P::Action, P::State>>) {
        self.0.successors(state, out)
    }
    fn heuristics(&self, state: &P::State) -> Heuristics {
        let h = self.0.heuristics(state);
        Heuristics {
            h_c: h.h_c_admissible,
            ..h
        }
    }
    fn action_costs(&self) -> Vec<(String, Cost)> {
        self.0.action_costs()
    }
    fn describe(&self) -> String {
        self.0.describe()
    }
}
