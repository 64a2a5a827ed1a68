//! Measures how deep a cost-ordered search digs into regions joined only by
//! the cheapest actions before leaving them.

use costlab::analysis::cheap_subspace_depths;
use costlab::domains::make_ferry;
use costlab::eval::{EvalKind, EvaluatorConfig};
use costlab::problem::Problem;
use costlab::search::{Budget, Search};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ferry = make_ferry(3, 1, 3)?;
    let run = Search::new(&ferry, EvaluatorConfig::new(EvalKind::Cost), Budget::prove())
        .record_expansions(true)
        .run()?;
    let best = run.best_cost().expect("ferry instances are solvable");
    let c_min = ferry.min_edge_cost();
    let depths = cheap_subspace_depths(&ferry, &run.expanded, run.expanded.len(), best);
    for d in depths.iter().take(8) {
        println!(
            "entry #{:<4} error {:>6}: depth {} of {} reachable, at least {} required",
            d.entry_index,
            d.e_c,
            d.depth,
            d.reachable_depth,
            d.required_depth(c_min)
        );
    }
    println!("{} entries measured", depths.len());
    Ok(())
}
