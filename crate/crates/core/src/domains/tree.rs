//! Uniform branching tree with `x` expensive and `y` cheap branches per node
//! and pseudorandomly planted goal leaves.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problem::{Cost, Edge, Heuristics, ModelError, Problem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeAction {
    High(u8),
    Low(u8),
}

impl fmt::Display for TreeAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeAction::High(i) => write!(f, "h{}", i + 1),
            TreeAction::Low(i) => write!(f, "l{}", i + 1),
        }
    }
}

/// How goal leaves are planted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpec {
    pub count: usize,
    /// Fraction of expensive actions in each planted plan.
    pub mix_ratio: Ratio<u64>,
    pub depth: u32,
    pub seed: u64,
}

/// A node is the path of branch indices from the root: `0..x` are the
/// expensive branches, `x..x+y` the cheap ones.
pub type TreeState = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeInstance {
    pub x: u8,
    pub y: u8,
    pub c_high: Cost,
    pub c_low: Cost,
    /// Nodes at this depth have no children.
    pub max_depth: u32,
    pub solution_spec: SolutionSpec,
    solutions: BTreeSet<TreeState>,
}

impl TreeInstance {
    pub fn new(
        x: u8,
        y: u8,
        c_high: Cost,
        c_low: Cost,
        max_depth: u32,
        solution_spec: SolutionSpec,
    ) -> Result<Self, ModelError> {
        let invalid = |key, reason: String| Err(ModelError::InvalidParameter { key, reason });
        if x < 2 || y < 2 {
            return invalid("x", format!("need x > 1 and y > 1, got x={x}, y={y}"));
        }
        if x.checked_add(y).is_none() {
            return invalid("y", "x + y must fit in a byte".into());
        }
        if c_low == 0 || c_low > c_high {
            return invalid("c_low", format!("need 1 <= c_low <= c_high, got {c_low} and {c_high}"));
        }
        if solution_spec.count == 0 {
            return invalid("count", "at least one solution must be planted".into());
        }
        if solution_spec.mix_ratio > Ratio::one() {
            return invalid("mix_ratio", "mix ratio must lie in [0, 1]".into());
        }
        if solution_spec.depth > max_depth {
            return invalid(
                "max_depth",
                format!("solutions at depth {} lie below max_depth {max_depth}", solution_spec.depth),
            );
        }
        let solutions = plant(x, y, &solution_spec);
        Ok(TreeInstance {
            x,
            y,
            c_high,
            c_low,
            max_depth,
            solution_spec,
            solutions,
        })
    }

    /// Plants solutions whose depth follows from a target normalized cost
    /// `normalized_cost` under an even high/low mix.
    #[allow(clippy::too_many_arguments)]
    pub fn for_normalized_cost(
        x: u8,
        y: u8,
        c_high: Cost,
        c_low: Cost,
        normalized_cost: Ratio<u64>,
        count: usize,
        seed: u64,
        max_depth: u32,
    ) -> Result<Self, ModelError> {
        let p = tree_predictions(x as u64, y as u64, Ratio::new(c_low, c_high), normalized_cost);
        let depth = p.depth_rounded as u32;
        let spec = SolutionSpec {
            count,
            mix_ratio: Ratio::new(1, 2),
            depth,
            seed,
        };
        Self::new(x, y, c_high, c_low, max_depth.max(depth), spec)
    }

    pub fn solutions(&self) -> &BTreeSet<TreeState> {
        &self.solutions
    }

    pub fn cost_of(&self, state: &[u8]) -> Cost {
        state
            .iter()
            .map(|&b| if b < self.x { self.c_high } else { self.c_low })
            .sum()
    }
}

fn round_half_even(r: Ratio<u64>) -> u64 {
    let floor = r.floor().to_integer();
    let frac = r.fract();
    let half = Ratio::new(1, 2);
    if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    }
}

fn plant(x: u8, y: u8, spec: &SolutionSpec) -> BTreeSet<TreeState> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let depth = spec.depth as usize;
    let highs = round_half_even(spec.mix_ratio * Ratio::from_integer(spec.depth as u64)) as usize;
    let mut out = BTreeSet::new();
    // distinct plans may be impossible to reach `count` in tiny trees
    let mut attempts = 0;
    while out.len() < spec.count && attempts < spec.count * 64 {
        attempts += 1;
        let mut positions: Vec<usize> = (0..depth).collect();
        positions.shuffle(&mut rng);
        let mut is_high = vec![false; depth];
        for &p in &positions[..highs] {
            is_high[p] = true;
        }
        let plan: TreeState = is_high
            .into_iter()
            .map(|h| if h { rng.gen_range(0..x) } else { x + rng.gen_range(0..y) })
            .collect();
        out.insert(plan);
    }
    out
}

/// The `x + y` outgoing edges of a tree node: expensive branches first.
pub fn tree_children(state: &TreeState, instance: &TreeInstance) -> Vec<Edge<TreeAction, TreeState>> {
    if state.len() as u32 >= instance.max_depth {
        return Vec::new();
    }
    (0..instance.x + instance.y)
        .map(|b| {
            let mut to = state.clone();
            to.push(b);
            let (action, cost) = if b < instance.x {
                (TreeAction::High(b), instance.c_high)
            } else {
                (TreeAction::Low(b - instance.x), instance.c_low)
            };
            Edge { action, cost, to }
        })
        .collect()
}

impl Problem for TreeInstance {
    type State = TreeState;
    type Action = TreeAction;

    fn initial_state(&self) -> TreeState {
        Vec::new()
    }

    fn is_goal(&self, state: &TreeState) -> bool {
        self.solutions.contains(state)
    }

    fn successors(&self, state: &TreeState, out: &mut Vec<Edge<TreeAction, TreeState>>) {
        out.extend(tree_children(state, self));
    }

    fn heuristics(&self, _: &TreeState) -> Heuristics {
        Heuristics::ZERO
    }

    fn action_costs(&self) -> Vec<(String, Cost)> {
        vec![("high".into(), self.c_high), ("low".into(), self.c_low)]
    }

    fn describe(&self) -> String {
        format!(
            "tree(x={},y={},c_high={},c_low={},depth={},count={},seed={})",
            self.x,
            self.y,
            self.c_high,
            self.c_low,
            self.solution_spec.depth,
            self.solution_spec.count,
            self.solution_spec.seed
        )
    }
}

/// Discovery-effort predictions for the branching tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePredictions {
    /// `(x + y^(1/ε))^C`, exponents floored to integers.
    pub cost_based_bound: BigUint,
    /// `(x + y)^d` at the rounded depth.
    pub size_based_bound: BigUint,
    /// `2C / (1 + ε)`.
    pub depth: Ratio<u64>,
    /// `depth` rounded to the nearest integer, ties to even.
    pub depth_rounded: u64,
}

pub fn tree_predictions(x: u64, y: u64, epsilon: Ratio<u64>, normalized_cost: Ratio<u64>) -> TreePredictions {
    assert!(!epsilon.is_zero(), "epsilon must be positive");
    let depth = Ratio::from_integer(2) * normalized_cost / (Ratio::one() + epsilon);
    let depth_rounded = round_half_even(depth);
    let inv_eps = epsilon.recip().floor().to_integer();
    let c = normalized_cost.floor().to_integer();
    let branch = BigUint::from(x) + BigUint::from(y).pow(inv_eps as u32);
    TreePredictions {
        cost_based_bound: branch.pow(c as u32),
        size_based_bound: BigUint::from(x + y).pow(depth_rounded as u32),
        depth,
        depth_rounded,
    }
}

/// Largest ε for which size-based search provably wins in a `b`-ary tree,
/// `(1 - log_b 2) / (1 + log_b 2)`.
pub fn eps_threshold(b: u64) -> f64 {
    let l = 2f64.ln() / (b as f64).ln();
    (1.0 - l) / (1.0 + l)
}

/// Exact form of [`eps_threshold`] when `b` is a power of two.
pub fn eps_threshold_exact(b: u64) -> Option<Ratio<u64>> {
    if b < 2 || !b.is_power_of_two() {
        return None;
    }
    // log_b 2 = 1/m with b = 2^m, so the threshold is (m - 1)/(m + 1)
    let m = b.trailing_zeros() as u64;
    Some(Ratio::new(m - 1, m + 1))
}

/// Number of nodes of the truncated tree, for sanity bounds in tests.
pub fn tree_size(instance: &TreeInstance) -> Option<u64> {
    let b = (instance.x + instance.y) as u64;
    let mut total: u64 = 0;
    let mut level: u64 = 1;
    for _ in 0..=instance.max_depth {
        total = total.checked_add(level)?;
        level = level.checked_mul(b)?;
    }
    Some(total)
}

impl TreePredictions {
    pub fn cost_to_size_ratio(&self) -> f64 {
        let c = self.cost_based_bound.to_f64().unwrap_or(f64::INFINITY);
        let s = self.size_based_bound.to_f64().unwrap_or(f64::INFINITY);
        c / s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(seed: u64) -> SolutionSpec {
        SolutionSpec {
            count: 3,
            mix_ratio: Ratio::new(1, 2),
            depth: 4,
            seed,
        }
    }

    #[test]
    fn four_children_with_two_costs() {
        let t = TreeInstance::new(2, 2, 4, 1, 6, spec(1)).unwrap();
        let kids = tree_children(&vec![], &t);
        assert_eq!(kids.len(), 4);
        let costs: Vec<_> = kids.iter().map(|e| e.cost).collect();
        assert_eq!(costs, vec![4, 4, 1, 1]);
        let names: Vec<_> = kids.iter().map(|e| e.action.to_string()).collect();
        assert_eq!(names, vec!["h1", "h2", "l1", "l2"]);
        assert!(tree_children(&vec![0; 6], &t).is_empty());
    }

    #[test]
    fn planted_solutions_replay_from_seed() {
        let a = TreeInstance::new(2, 3, 4, 1, 6, spec(7)).unwrap();
        let b = TreeInstance::new(2, 3, 4, 1, 6, spec(7)).unwrap();
        assert_eq!(a.solutions(), b.solutions());
        assert_eq!(a.solutions().len(), 3);
        for s in a.solutions() {
            assert_eq!(s.len(), 4);
            assert_eq!(s.iter().filter(|&&b| b < 2).count(), 2);
            // every prefix is a reachable non-goal node
            for cut in 0..s.len() {
                assert!(!a.is_goal(&s[..cut].to_vec()));
            }
        }
        let c = TreeInstance::new(2, 3, 4, 1, 6, spec(8)).unwrap();
        assert_ne!(a.solutions(), c.solutions());
    }

    #[test]
    fn predictions() {
        let p = tree_predictions(2, 2, Ratio::new(1, 4), Ratio::from_integer(10));
        assert_eq!(p.depth, Ratio::from_integer(16));
        let p = tree_predictions(2, 2, Ratio::new(1, 2), Ratio::from_integer(2));
        assert_eq!(p.cost_based_bound, BigUint::from(36u32));
        assert_eq!(p.depth, Ratio::new(8, 3));
        assert_eq!(p.depth_rounded, 3);
        assert_eq!(p.size_based_bound, BigUint::from(64u32));
        let p = tree_predictions(2, 2, Ratio::new(1, 5), Ratio::from_integer(3));
        assert_eq!(p.depth_rounded, 5);
    }

    #[test]
    fn thresholds() {
        assert_eq!(eps_threshold_exact(4), Some(Ratio::new(1, 3)));
        assert!((eps_threshold(4) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(eps_threshold_exact(2), Some(Ratio::new(0, 1)));
        assert_eq!(eps_threshold_exact(6), None);
        assert!((eps_threshold(8) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rounding_ties_to_even() {
        assert_eq!(round_half_even(Ratio::new(9, 2)), 4);
        assert_eq!(round_half_even(Ratio::new(5, 2)), 2);
        assert_eq!(round_half_even(Ratio::new(7, 2)), 4);
        assert_eq!(round_half_even(Ratio::new(8, 3)), 3);
    }

    #[test]
    fn rejects_degenerate_trees() {
        assert!(TreeInstance::new(1, 2, 4, 1, 6, spec(0)).is_err());
        assert!(TreeInstance::new(2, 2, 4, 0, 6, spec(0)).is_err());
        assert!(TreeInstance::new(2, 2, 4, 1, 3, spec(0)).is_err());
    }
}
