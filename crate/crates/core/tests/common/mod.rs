#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use costlab::problem::{Cost, Problem};

/// Plain uniform-cost search written without any library helper.
pub fn reference_optimum<P: Problem>(problem: &P) -> Option<Cost> {
    let mut best: HashMap<P::State, Cost> = HashMap::new();
    let mut heap = BinaryHeap::new();
    let mut order: Vec<P::State> = Vec::new();
    let root = problem.initial_state();
    best.insert(root.clone(), 0);
    order.push(root);
    heap.push(Reverse((0u64, 0usize)));
    let mut edges = Vec::new();
    while let Some(Reverse((g, i))) = heap.pop() {
        let s = order[i].clone();
        if best[&s] < g {
            continue;
        }
        if problem.is_goal(&s) {
            return Some(g);
        }
        edges.clear();
        problem.successors(&s, &mut edges);
        for e in edges.drain(..) {
            let ng = g + e.cost;
            if best.get(&e.to).is_none_or(|&old| ng < old) {
                best.insert(e.to.clone(), ng);
                order.push(e.to);
                heap.push(Reverse((ng, order.len() - 1)));
            }
        }
    }
    None
}

/// (key, -serial, state, g_cost, g_size)
type Entry = (u64, i64, u64, u64, u64);

/// Which quantity the counter simulation orders by.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Cost,
    Size,
}

/// Independent re-enactment of a blind best-first search on the k-bit
/// counter: pops by `(g, newest first)`, reports on pop, drops a state
/// already closed at no higher cost. Returns expansions before the goal is
/// popped.
pub fn counter_discovery(k: u32, goal: u64, order: Order) -> u64 {
    let n = 1u64 << k;
    let wrap = n / 2;
    let mut heap: BinaryHeap<Reverse<Entry>> = BinaryHeap::new();
    let mut closed: HashMap<u64, u64> = HashMap::new();
    let mut serial = 0i64;
    heap.push(Reverse((0, 0, 0, 0, 0)));
    let mut expansions = 0;
    while let Some(Reverse((_, _, state, g_cost, g_size))) = heap.pop() {
        if state == goal {
            return expansions;
        }
        if closed.get(&state).is_some_and(|&c| c <= g_cost) {
            continue;
        }
        closed.insert(state, g_cost);
        expansions += 1;
        let up_cost = if state == n - 1 { wrap } else { 1 };
        let down_cost = if state == 0 { wrap } else { 1 };
        for (child, c) in [((state + 1) % n, up_cost), ((state + n - 1) % n, down_cost)] {
            serial += 1;
            let (gc, gs) = (g_cost + c, g_size + 1);
            let key = match order {
                Order::Cost => gc,
                Order::Size => gs,
            };
            heap.push(Reverse((key, -serial, child, gc, gs)));
        }
    }
    unreachable!("the counter goal is always reachable")
}

/// A move along one edge of an explicit graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move(pub usize, pub usize, pub Cost);

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}@{}", self.0, self.1, self.2)
    }
}

/// A small explicit graph with hand-set heuristics, rooted at node 0.
#[derive(Clone, Debug)]
pub struct Graph {
    pub edges: Vec<Vec<(usize, Cost)>>,
    pub h: Vec<Cost>,
    pub h_adm: Vec<Cost>,
    pub goals: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize, Cost)], goals: &[usize]) -> Self {
        let mut out = vec![Vec::new(); n];
        for &(u, v, c) in edges {
            out[u].push((v, c));
        }
        Graph {
            edges: out,
            h: vec![0; n],
            h_adm: vec![0; n],
            goals: goals.to_vec(),
        }
    }

    /// Sets both heuristics to the same values.
    pub fn with_h(mut self, h: Vec<Cost>) -> Self {
        self.h_adm = h.clone();
        self.h = h;
        self
    }

    /// True cost-to-go of every node by reverse relaxation.
    pub fn cost_to_go(&self) -> Vec<Option<Cost>> {
        let n = self.edges.len();
        let mut d: Vec<Option<Cost>> = (0..n).map(|v| self.goals.contains(&v).then_some(0)).collect();
        for _ in 0..n {
            for u in 0..n {
                if self.goals.contains(&u) {
                    continue;
                }
                for &(v, c) in &self.edges[u] {
                    if let Some(dv) = d[v] {
                        if d[u].is_none_or(|du| dv + c < du) {
                            d[u] = Some(dv + c);
                        }
                    }
                }
            }
        }
        d
    }

    pub fn scaled(&self, m: Cost) -> Self {
        Graph {
            edges: self.edges.iter().map(|out| out.iter().map(|&(v, c)| (v, c * m)).collect()).collect(),
            h: self.h.iter().map(|h| h * m).collect(),
            h_adm: self.h_adm.iter().map(|h| h * m).collect(),
            goals: self.goals.clone(),
        }
    }
}

impl Problem for Graph {
    type State = usize;
    type Action = Move;

    fn initial_state(&self) -> usize {
        0
    }

    fn is_goal(&self, s: &usize) -> bool {
        self.goals.contains(s)
    }

    fn successors(&self, s: &usize, out: &mut Vec<costlab::problem::Edge<Move, usize>>) {
        for &(v, c) in &self.edges[*s] {
            out.push(costlab::problem::Edge { action: Move(*s, v, c), cost: c, to: v });
        }
    }

    fn heuristics(&self, s: &usize) -> costlab::problem::Heuristics {
        if self.is_goal(s) {
            return costlab::problem::Heuristics::ZERO;
        }
        costlab::problem::Heuristics {
            h_c: self.h[*s],
            h_s: 0,
            h_s_hat: 0,
            h_c_admissible: self.h_adm[*s],
        }
    }

    fn action_costs(&self) -> Vec<(String, Cost)> {
        let mut costs: Vec<Cost> = self.edges.iter().flatten().map(|&(_, c)| c).collect();
        costs.sort_unstable();
        costs.dedup();
        if costs.is_empty() {
            costs.push(1);
        }
        costs.into_iter().map(|c| (format!("edge-{c}"), c)).collect()
    }

    fn describe(&self) -> String {
        format!("graph(n={},edges={:?})", self.edges.len(), self.edges)
    }
}
