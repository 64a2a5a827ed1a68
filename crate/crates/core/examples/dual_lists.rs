//! Two open lists served in alternation, as planners do with a cost and a
//! size-based queue, compared with each single list.

use costlab::domains::make_ferry;
use costlab::eval::{dual_open_select, EvalKind, Evaluator, EvaluatorConfig};
use costlab::search::{run_search, Budget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let steps: Vec<usize> = (0..6).map(dual_open_select).collect();
    println!("list served at steps 0..6: {steps:?}");
    let ferry = make_ferry(3, 2, 4)?;
    let configs = [
        EvaluatorConfig::weighted(EvalKind::Cost, 5),
        EvaluatorConfig::new(EvalKind::SizeCostSensitive),
        EvaluatorConfig::dual(Evaluator::weighted(EvalKind::Cost, 5), Evaluator::new(EvalKind::SizeCostSensitive)),
    ];
    for config in configs {
        let run = run_search(&ferry, &config, &Budget::expansions(100_000))?;
        println!(
            "{:<18} first solution after {:?} expansions, best cost {:?}",
            config.label(),
            run.metrics.discovery_expansions(),
            run.best_cost()
        );
    }
    Ok(())
}
