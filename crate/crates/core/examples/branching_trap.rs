//! The branching tree: `x` expensive and `y` cheap children per node.
//! Prints the predicted discovery bounds and then measures both evaluators
//! on planted instances as the cheap cost shrinks.

use costlab::domains::{tree_predictions, TreeInstance};
use costlab::eval::{EvalKind, EvaluatorConfig};
use costlab::search::{run_search, Budget};
use num_rational::Ratio;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let normalized = Ratio::from_integer(3);
    for c_high in [2u64, 3, 5] {
        let eps = Ratio::new(1, c_high);
        let p = tree_predictions(2, 2, eps, normalized);
        let max_depth = p.depth_rounded as u32 + 3 * c_high as u32;
        let tree = TreeInstance::for_normalized_cost(2, 2, c_high, 1, normalized, 4, 7, max_depth)?;
        let mut found = Vec::new();
        for kind in [EvalKind::Cost, EvalKind::Size] {
            let run = run_search(&tree, &EvaluatorConfig::new(kind), &Budget::expansions(2_000_000))?;
            found.push(run.metrics.discovery_expansions());
        }
        println!(
            "eps=1/{c_high}: depth {} | predicted cost {} vs size {} | measured cost {:?} vs size {:?}",
            p.depth_rounded, p.cost_based_bound, p.size_based_bound, found[0], found[1]
        );
    }
    Ok(())
}
