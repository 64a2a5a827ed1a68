//! Sweeps every goal of a small counter and shows where size-ordered
//! search stops being the faster way to a first solution.

use costlab::eval::{EvalKind, EvaluatorConfig};
use costlab::harness::sweep_goals;
use costlab::search::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 8;
    let report = sweep_goals(
        k,
        &EvaluatorConfig::new(EvalKind::Cost),
        &EvaluatorConfig::new(EvalKind::Size),
        &Budget::expansions(1 << 20),
    )?;
    for row in report.rows.iter().step_by(16) {
        println!("goal {:>3}: cost {:>4?}  size {:>4?}", row.goal, row.first, row.second);
    }
    println!("cost needs twice the effort up to goal fraction {:?}", report.ratio_holds_until(2));
    println!("size falls behind from goal fraction {:?}", report.lead_change());
    Ok(())
}
