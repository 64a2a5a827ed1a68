//! Exhaustive reference solvers, independent of the search engine.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use thiserror::Error;

use crate::problem::{Cost, Edge, Problem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("more than {cap} states")]
    CapExceeded { cap: u64 },
    #[error("no goal state is reachable")]
    Unsolvable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport<A> {
    pub optimal_cost: Cost,
    /// Length of the shortest among the cheapest plans.
    pub optimal_size_among_cheapest: u64,
    /// Length of the shortest plan of any cost.
    pub smallest_size: u64,
    pub plan: Vec<A>,
    /// States discovered by the uniform-cost pass.
    pub states_seen: u64,
}

/// Uniform-cost search ordered by `(cost, size)` plus a breadth-first pass.
/// Goal states are not expanded, matching the search semantics.
pub fn oracle_solve<P: Problem>(problem: &P, cap: u64) -> Result<OracleReport<P::Action>, OracleError> {
    let root = problem.initial_state();
    let mut index: HashMap<P::State, usize> = HashMap::new();
    let mut states: Vec<P::State> = Vec::new();
    let mut best: Vec<(Cost, u64)> = Vec::new();
    let mut back: Vec<Option<(usize, P::Action)>> = Vec::new();
    let mut done: Vec<bool> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut edges: Vec<Edge<P::Action, P::State>> = Vec::new();

    index.insert(root.clone(), 0);
    states.push(root);
    best.push((0, 0));
    back.push(None);
    done.push(false);
    heap.push(Reverse((0u64, 0u64, 0usize)));

    let mut found = None;
    while let Some(Reverse((cost, size, i))) = heap.pop() {
        if done[i] || (cost, size) != best[i] {
            continue;
        }
        done[i] = true;
        if problem.is_goal(&states[i]) {
            found = Some(i);
            break;
        }
        edges.clear();
        problem.successors(&states[i], &mut edges);
        for e in edges.drain(..) {
            let label = (cost + e.cost, size + 1);
            let j = match index.get(&e.to) {
                Some(&j) => j,
                None => {
                    if states.len() as u64 >= cap {
                        return Err(OracleError::CapExceeded { cap });
                    }
                    let j = states.len();
                    index.insert(e.to.clone(), j);
                    states.push(e.to);
                    best.push((Cost::MAX, u64::MAX));
                    back.push(None);
                    done.push(false);
                    j
                }
            };
            if label < best[j] {
                best[j] = label;
                back[j] = Some((i, e.action));
                heap.push(Reverse((label.0, label.1, j)));
            }
        }
    }
    let goal = found.ok_or(OracleError::Unsolvable)?;
    let mut plan = Vec::new();
    let mut cursor = goal;
    while let Some((prev, action)) = &back[cursor] {
        plan.push(action.clone());
        cursor = *prev;
    }
    plan.reverse();
    let smallest_size = smallest_plan_size(problem, cap)?;
    Ok(OracleReport {
        optimal_cost: best[goal].0,
        optimal_size_among_cheapest: best[goal].1,
        smallest_size,
        plan,
        states_seen: states.len() as u64,
    })
}

fn smallest_plan_size<P: Problem>(problem: &P, cap: u64) -> Result<u64, OracleError> {
    let root = problem.initial_state();
    let mut depth: HashMap<P::State, u64> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut edges = Vec::new();
    depth.insert(root.clone(), 0);
    queue.push_back(root);
    while let Some(s) = queue.pop_front() {
        let d = depth[&s];
        if problem.is_goal(&s) {
            return Ok(d);
        }
        edges.clear();
        problem.successors(&s, &mut edges);
        for e in edges.drain(..) {
            if !depth.contains_key(&e.to) {
                if depth.len() as u64 >= cap {
                    return Err(OracleError::CapExceeded { cap });
                }
                depth.insert(e.to.clone(), d + 1);
                queue.push_back(e.to);
            }
        }
    }
    Err(OracleError::Unsolvable)
}

/// The reachable part of an implicit graph, materialized.
#[derive(Clone, Debug)]
pub struct ExplicitGraph<S> {
    pub states: Vec<S>,
    pub index: HashMap<S, usize>,
    /// Outgoing `(target, cost)` pairs per state.
    pub edges: Vec<Vec<(usize, Cost)>>,
    pub goal: Vec<bool>,
}

impl<S: Clone + Eq + std::hash::Hash> ExplicitGraph<S> {
    /// Enumerates every state reachable from the initial state, goals
    /// included and expanded.
    pub fn explore<P: Problem<State = S>>(problem: &P, cap: u64) -> Result<Self, OracleError> {
        let root = problem.initial_state();
        let mut g = ExplicitGraph {
            states: vec![root.clone()],
            index: HashMap::from([(root, 0)]),
            edges: Vec::new(),
            goal: Vec::new(),
        };
        let mut buf = Vec::new();
        let mut i = 0;
        while i < g.states.len() {
            buf.clear();
            problem.successors(&g.states[i], &mut buf);
            g.goal.push(problem.is_goal(&g.states[i]));
            let mut out = Vec::with_capacity(buf.len());
            for e in buf.drain(..) {
                let j = match g.index.get(&e.to) {
                    Some(&j) => j,
                    None => {
                        if g.states.len() as u64 >= cap {
                            return Err(OracleError::CapExceeded { cap });
                        }
                        let j = g.states.len();
                        g.index.insert(e.to.clone(), j);
                        g.states.push(e.to);
                        j
                    }
                };
                out.push((j, e.cost));
            }
            g.edges.push(out);
            i += 1;
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Cheapest cost from the initial state to every state, never passing
    /// through a goal state.
    pub fn cost_to_reach(&self) -> Vec<Option<Cost>> {
        let mut dist: Vec<Option<Cost>> = vec![None; self.len()];
        let mut heap = BinaryHeap::from([Reverse((0, 0usize))]);
        dist[0] = Some(0);
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u] != Some(d) || self.goal[u] {
                continue;
            }
            for &(v, c) in &self.edges[u] {
                let nd = d + c;
                if dist[v].is_none_or(|old| nd < old) {
                    dist[v] = Some(nd);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        dist
    }

    /// Optimal cost-to-go `h*` of every state.
    pub fn cost_to_go(&self) -> Vec<Option<Cost>> {
        let mut reverse: Vec<Vec<(usize, Cost)>> = vec![Vec::new(); self.len()];
        for (u, out) in self.edges.iter().enumerate() {
            for &(v, c) in out {
                reverse[v].push((u, c));
            }
        }
        let mut dist: Vec<Option<Cost>> = vec![None; self.len()];
        let mut heap = BinaryHeap::new();
        for (i, &g) in self.goal.iter().enumerate() {
            if g {
                dist[i] = Some(0);
                heap.push(Reverse((0, i)));
            }
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if dist[v] != Some(d) {
                continue;
            }
            for &(u, c) in &reverse[v] {
                if self.goal[u] {
                    continue;
                }
                let nd = d + c;
                if dist[u].is_none_or(|old| nd < old) {
                    dist[u] = Some(nd);
                    heap.push(Reverse((nd, u)));
                }
            }
        }
        dist
    }
}
