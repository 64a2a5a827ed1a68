//! Benchmark families: the overflow counter, the uniform branching tree and
//! the simplified travel domain.

pub mod counter;
pub mod tree;
pub mod travel;

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

pub use counter::{counter_children, counter_solution_costs, CounterAction, CounterHeuristic, CounterInstance};
pub use travel::{
    make_ferry, make_rendezvous, make_rendezvous_with, make_swap, make_swap_with, travel_children, travel_heuristics,
    Location, TravelAction, TravelInstance, TravelState,
};
pub use tree::{eps_threshold, eps_threshold_exact, tree_children, tree_predictions, tree_size, SolutionSpec, TreeAction, TreeInstance, TreePredictions};

use crate::problem::Problem;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("more than {cap} reachable states")]
pub struct CapExceeded {
    pub cap: u64,
}

/// Counts the states reachable from the initial state by breadth-first
/// enumeration, expanding goal states as well.
pub fn count_reachable<P: Problem>(problem: &P, cap: u64) -> Result<u64, CapExceeded> {
    let root = problem.initial_state();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut edges = Vec::new();
    seen.insert(root.clone());
    queue.push_back(root);
    while let Some(s) = queue.pop_front() {
        edges.clear();
        problem.successors(&s, &mut edges);
        for e in edges.drain(..) {
            if !seen.contains(&e.to) {
                if seen.len() as u64 >= cap {
                    return Err(CapExceeded { cap });
                }
                seen.insert(e.to.clone());
                queue.push_back(e.to);
            }
        }
    }
    Ok(seen.len() as u64)
}
