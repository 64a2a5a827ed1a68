use crate::problem::{Cost, Edge, Problem};

/// Index of an expanded node in the engine's path arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A path from the initial state, represented by its last edge and a link
/// to the (already expanded) prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchNode<S, A> {
    pub parent: Option<NodeId>,
    pub action: Option<A>,
    pub state: S,
    pub g_cost: Cost,
    pub g_size: u64,
}

impl<S, A> SearchNode<S, A> {
    pub fn root(state: S) -> Self {
        SearchNode {
            parent: None,
            action: None,
            state,
            g_cost: 0,
            g_size: 0,
        }
    }

    /// Extends this path, stored under `id`, by one edge.
    pub fn extend(&self, id: NodeId, edge: Edge<A, S>) -> Self {
        SearchNode {
            parent: Some(id),
            action: Some(edge.action),
            state: edge.to,
            g_cost: self.g_cost + edge.cost,
            g_size: self.g_size + 1,
        }
    }
}

/// Generates one child per outgoing edge, in the domain's canonical order.
pub fn expand<P: Problem>(
    problem: &P,
    id: NodeId,
    node: &SearchNode<P::State, P::Action>,
) -> Vec<SearchNode<P::State, P::Action>> {
    let mut edges = Vec::new();
    problem.successors(&node.state, &mut edges);
    edges.into_iter().map(|e| node.extend(id, e)).collect()
}

/// Parent links and last actions of every expanded path; enough to rebuild
/// a plan without keeping expanded states alive.
#[derive(Debug)]
pub(crate) struct PathArena<A> {
    links: Vec<(Option<NodeId>, Option<A>)>,
}

impl<A: Clone> PathArena<A> {
    pub(crate) fn new() -> Self {
        PathArena { links: Vec::new() }
    }

    pub(crate) fn push(&mut self, parent: Option<NodeId>, action: Option<A>) -> NodeId {
        let id = NodeId(u32::try_from(self.links.len()).expect("more than 2^32 expansions"));
        self.links.push((parent, action));
        id
    }

    /// Actions along the path ending with `last` whose prefix is `parent`.
    pub(crate) fn plan(&self, parent: Option<NodeId>, last: Option<&A>) -> Vec<A> {
        let mut plan: Vec<A> = last.cloned().into_iter().collect();
        let mut cursor = parent;
        while let Some(id) = cursor {
            let (p, a) = &self.links[id.index()];
            if let Some(a) = a {
                plan.push(a.clone());
            }
            cursor = *p;
        }
        plan.reverse();
        plan
    }
}
