//! Best-first branch-and-bound over implicit graphs.
//!
//! Each removal from the open list runs, in order, the bound test (against
//! the model's admissible heuristic), the goal test and the duplicate test
//! before the node is expanded. Goals are reported and never expanded, so
//! the run is anytime: incumbents stream out with strictly decreasing cost
//! until the open list is exhausted (an optimality proof) or a budget
//! expires.

mod closed;
mod metrics;
mod node;
mod open;

use std::time::{Duration, Instant};

use thiserror::Error;

pub use closed::{bound_test, duplicate_test, ClosedEntry, ClosedMap, DuplicateOutcome, ReopenPolicy};
pub use metrics::{AnytimePoint, IncumbentRecord, RunMetrics, Termination};
pub use node::{expand, NodeId, SearchNode};
pub use open::{OpenKey, OpenLists};

use crate::eval::{dual_open_select, EvalError, Evaluator, EvaluatorConfig, PathCosts, Rational, TieBreak};
use crate::problem::{validate, Cost, Edge, Heuristics, ModelError, Problem};
use node::PathArena;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("budget sets no limit and does not ask for an optimality proof")]
    UnboundedBudget,
    #[error("edge `{0}` has zero cost")]
    ZeroCostEdge(String),
}

/// Resource limits of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_expansions: Option<u64>,
    pub max_time: Option<Duration>,
    /// Run until the open list is exhausted if no other limit hits first.
    pub prove_optimality: bool,
}

impl Budget {
    pub fn expansions(max: u64) -> Self {
        Budget {
            max_expansions: Some(max),
            ..Budget::default()
        }
    }

    pub fn prove() -> Self {
        Budget {
            prove_optimality: true,
            ..Budget::default()
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_expansions.is_none() && self.max_time.is_none() && !self.prove_optimality {
            return Err(SearchError::UnboundedBudget);
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RunResult<S, A> {
    pub incumbents: Vec<IncumbentRecord<A>>,
    pub metrics: RunMetrics,
    /// Expanded nodes in order; empty unless recording was requested.
    pub expanded: Vec<ExpandedNode<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedNode<S> {
    pub state: S,
    pub g_cost: Cost,
    pub g_size: u64,
}

impl<S, A> RunResult<S, A> {
    pub fn best(&self) -> Option<&IncumbentRecord<A>> {
        self.incumbents.last()
    }

    pub fn best_cost(&self) -> Option<Cost> {
        self.best().map(|i| i.cost)
    }
}

/// Runs a search with the default options.
pub fn run_search<P: Problem>(
    problem: &P,
    config: &EvaluatorConfig,
    budget: &Budget,
) -> Result<RunResult<P::State, P::Action>, SearchError> {
    Search::new(problem, *config, *budget).run()
}

struct Pending<S, A> {
    node: SearchNode<S, A>,
    heuristics: Heuristics,
}

/// A configured search run.
pub struct Search<'p, P: Problem> {
    problem: &'p P,
    config: EvaluatorConfig,
    budget: Budget,
    reopen: ReopenPolicy,
    record_expansions: bool,
}

impl<'p, P: Problem> Search<'p, P> {
    pub fn new(problem: &'p P, config: EvaluatorConfig, budget: Budget) -> Self {
        Search {
            problem,
            config,
            budget,
            reopen: ReopenPolicy::default(),
            record_expansions: false,
        }
    }

    pub fn reopen(mut self, policy: ReopenPolicy) -> Self {
        self.reopen = policy;
        self
    }

    pub fn record_expansions(mut self, on: bool) -> Self {
        self.record_expansions = on;
        self
    }

    pub fn run(self) -> Result<RunResult<P::State, P::Action>, SearchError> {
        self.run_with(|_| {})
    }

    /// Runs the search, handing every incumbent to `report` the moment it
    /// is found.
    pub fn run_with<F>(self, mut report: F) -> Result<RunResult<P::State, P::Action>, SearchError>
    where
        F: FnMut(&IncumbentRecord<P::Action>),
    {
        validate(self.problem)?;
        self.config.validate()?;
        self.budget.validate()?;

        let problem = self.problem;
        let config = self.config;
        let evaluators: Vec<Evaluator> = std::iter::once(config.primary)
            .chain(config.secondary)
            .collect();
        let c_max = problem.max_edge_cost();
        let start = Instant::now();

        let mut open: OpenLists<Pending<P::State, P::Action>> = OpenLists::new(evaluators.len());
        let mut closed = ClosedMap::new();
        let mut arena = PathArena::new();
        let mut metrics = RunMetrics::new();
        let mut incumbents: Vec<IncumbentRecord<P::Action>> = Vec::new();
        let mut expanded = Vec::new();
        let mut edges: Vec<Edge<P::Action, P::State>> = Vec::new();
        let mut serial: i64 = 0;
        let mut step: u64 = 0;
        let mut best: Option<Cost> = None;

        let mut push = |open: &mut OpenLists<Pending<P::State, P::Action>>,
                        node: SearchNode<P::State, P::Action>,
                        heuristics: Heuristics,
                        parent_h: Option<&Heuristics>| {
            let h_eval = if config.delayed {
                parent_h.unwrap_or(&heuristics)
            } else {
                &heuristics
            };
            let g = PathCosts {
                g_cost: node.g_cost,
                g_size: node.g_size,
            };
            serial += 1;
            let keys: Vec<OpenKey> = evaluators
                .iter()
                .map(|e| open_key(e, config.tie_break, g, h_eval, c_max, serial))
                .collect();
            let ticket = open.store(Pending { node, heuristics });
            for (list, key) in keys.into_iter().enumerate() {
                open.list(list, ticket, key);
            }
        };

        let root = SearchNode::root(problem.initial_state());
        let root_h = problem.heuristics(&root.state);
        push(&mut open, root, root_h, None);
        metrics.peak_open = 1;

        let termination = loop {
            if step.is_multiple_of(256) {
                if let Some(limit) = self.budget.max_time {
                    if start.elapsed() >= limit {
                        break Termination::Budget;
                    }
                }
            }
            if open.is_empty() {
                break if incumbents.is_empty() {
                    Termination::ExhaustedUnsolvable
                } else {
                    Termination::Proved
                };
            }
            let preferred = if open.lists() > 1 { dual_open_select(step) } else { 0 };
            let popped = open.pop(preferred).or_else(|| {
                (0..open.lists())
                    .filter(|&l| l != preferred)
                    .find_map(|l| open.pop(l))
            });
            let Some((_, Pending { node, heuristics })) = popped else {
                unreachable!("live entries are listed on every open list");
            };
            step += 1;

            if bound_test(node.g_cost, heuristics.h_c_admissible, best) {
                metrics.pruned_by_bound += 1;
                continue;
            }

            if problem.is_goal(&node.state) {
                let record = IncumbentRecord {
                    plan: arena.plan(node.parent, node.action.as_ref()),
                    cost: node.g_cost,
                    size: node.g_size,
                    expansions_at_discovery: metrics.expansions,
                    wall_time_at_discovery: start.elapsed(),
                };
                debug_assert!(best.is_none_or(|b| record.cost < b));
                best = Some(record.cost);
                report(&record);
                metrics.anytime_profile.push(record.point());
                incumbents.push(record);
                continue;
            }

            if let Some(limit) = self.budget.max_expansions {
                if metrics.expansions >= limit {
                    break Termination::Budget;
                }
            }

            match duplicate_test(&mut closed, &node.state, node.g_cost, metrics.expansions, self.reopen) {
                DuplicateOutcome::Fresh => {}
                DuplicateOutcome::Reopened => metrics.re_expansions += 1,
                DuplicateOutcome::Dominated => {
                    metrics.duplicates_dropped += 1;
                    continue;
                }
                DuplicateOutcome::ReopenSkipped => {
                    metrics.reopens_skipped += 1;
                    continue;
                }
            }
            metrics.peak_closed = metrics.peak_closed.max(closed.len() as u64);

            metrics.expansions += 1;
            if self.record_expansions {
                expanded.push(ExpandedNode {
                    state: node.state.clone(),
                    g_cost: node.g_cost,
                    g_size: node.g_size,
                });
            }
            let id = arena.push(node.parent, node.action.clone());
            edges.clear();
            problem.successors(&node.state, &mut edges);
            for edge in edges.drain(..) {
                if edge.cost == 0 {
                    return Err(SearchError::ZeroCostEdge(edge.action.to_string()));
                }
                let child = node.extend(id, edge);
                let child_h = problem.heuristics(&child.state);
                metrics.generations += 1;
                push(&mut open, child, child_h, Some(&heuristics));
            }
            metrics.peak_open = metrics.peak_open.max(open.len() as u64);
        };

        metrics.termination = termination;
        metrics.wall_time = start.elapsed();
        Ok(RunResult {
            incumbents,
            metrics,
            expanded,
        })
    }
}

fn open_key(
    evaluator: &Evaluator,
    tie_break: TieBreak,
    g: PathCosts,
    h: &Heuristics,
    c_max: Cost,
    serial: i64,
) -> OpenKey {
    let score = evaluator.score(g, h, c_max);
    let (secondary, order) = match tie_break {
        TieBreak::Default => (score.h, -serial),
        TieBreak::Fifo => (score.h, serial),
        TieBreak::CostSecondary => (Rational::from_integer((g.g_cost + h.h_c) as i64), -serial),
        TieBreak::SizeSecondary => (Rational::from_integer((g.g_size + h.h_s_hat) as i64), -serial),
    };
    OpenKey {
        f: score.f,
        secondary,
        order,
    }
}
