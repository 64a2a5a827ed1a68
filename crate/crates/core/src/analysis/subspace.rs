//! Depth of the cheap-edge subspaces a run explores.
//!
//! A cheap component is a set of states joined by edges of minimum cost.
//! The first expanded state of each component is its entry; the explored
//! depth beneath the entry is the largest cheap-edge distance, through
//! expanded states only, from the entry to another expanded state of the
//! component.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::problem::{Cost, Problem};
use crate::search::ExpandedNode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceDepth<S> {
    pub entry: S,
    /// Position of the entry in the expansion order.
    pub entry_index: usize,
    /// `f_c(x) - f_c(entry)` for the reference cost `f_c(x)`.
    pub e_c: i64,
    pub depth: u64,
    /// Largest cheap-edge distance from the entry over the whole graph.
    pub reachable_depth: u64,
}

impl<S> SubspaceDepth<S> {
    /// Every cheap descendant within `(e_c - 1) / (2 c_min)` steps has
    /// `f_c` below the reference, so a cost-ordered search explores at
    /// least that deep, or the whole subspace when it is shallower.
    pub fn required_depth(&self, c_min: Cost) -> u64 {
        if self.e_c <= 0 {
            return 0;
        }
        ((self.e_c as u64 - 1) / (2 * c_min)).min(self.reachable_depth)
    }

    pub fn upper_depth(&self, c_min: Cost) -> u64 {
        self.e_c.max(0) as u64 / c_min
    }
}

/// Measures every entry among the first `prefix` expansions.
pub fn cheap_subspace_depths<P: Problem>(
    problem: &P,
    expanded: &[ExpandedNode<P::State>],
    prefix: usize,
    reference_cost: Cost,
) -> Vec<SubspaceDepth<P::State>> {
    let c_min = problem.min_edge_cost();
    let expanded = &expanded[..prefix.min(expanded.len())];
    let members: HashSet<&P::State> = expanded.iter().map(|e| &e.state).collect();
    let mut cheap: HashMap<&P::State, Vec<P::State>> = HashMap::new();
    let mut buf = Vec::new();
    for e in expanded {
        buf.clear();
        problem.successors(&e.state, &mut buf);
        let next = buf
            .drain(..)
            .filter(|edge| edge.cost == c_min && members.contains(&edge.to))
            .map(|edge| edge.to)
            .collect();
        cheap.insert(&e.state, next);
    }
    let undirected = {
        let mut adj: HashMap<&P::State, Vec<&P::State>> = HashMap::new();
        for (from, tos) in &cheap {
            for to in tos {
                let to = *members.get(to).expect("filtered to members");
                adj.entry(*from).or_default().push(to);
                adj.entry(to).or_default().push(*from);
            }
        }
        adj
    };

    let mut assigned: HashSet<&P::State> = HashSet::new();
    let mut out = Vec::new();
    for (index, e) in expanded.iter().enumerate() {
        if assigned.contains(&e.state) {
            continue;
        }
        let mut component = vec![&e.state];
        assigned.insert(&e.state);
        let mut stack = vec![&e.state];
        while let Some(s) = stack.pop() {
            for &t in undirected.get(s).map(Vec::as_slice).unwrap_or(&[]) {
                if assigned.insert(t) {
                    component.push(t);
                    stack.push(t);
                }
            }
        }
        let mut dist: HashMap<&P::State, u64> = HashMap::from([(&e.state, 0)]);
        let mut queue = VecDeque::from([&e.state]);
        let mut depth = 0;
        while let Some(s) = queue.pop_front() {
            let d = dist[s];
            depth = depth.max(d);
            for t in cheap.get(s).into_iter().flatten() {
                let t = *members.get(t).expect("filtered to members");
                if !dist.contains_key(t) {
                    dist.insert(t, d + 1);
                    queue.push_back(t);
                }
            }
        }
        let reachable_depth = cheap_eccentricity(problem, &e.state, c_min);
        let f_c = e.g_cost + problem.heuristics(&e.state).h_c;
        out.push(SubspaceDepth {
            entry: e.state.clone(),
            entry_index: index,
            e_c: reference_cost as i64 - f_c as i64,
            depth,
            reachable_depth,
        });
    }
    out
}

fn cheap_eccentricity<P: Problem>(problem: &P, from: &P::State, c_min: Cost) -> u64 {
    let mut dist: HashMap<P::State, u64> = HashMap::from([(from.clone(), 0)]);
    let mut queue = VecDeque::from([from.clone()]);
    let mut buf = Vec::new();
    let mut depth = 0;
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        depth = depth.max(d);
        buf.clear();
        problem.successors(&s, &mut buf);
        for edge in buf.drain(..) {
            if edge.cost == c_min && !dist.contains_key(&edge.to) {
                dist.insert(edge.to.clone(), d + 1);
                queue.push_back(edge.to);
            }
        }
    }
    depth
}
