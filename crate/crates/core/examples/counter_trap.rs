//! Cost-ordered search crawls through the cheap increments of the overflow
//! counter while size-ordered search wraps around with two expensive moves.
//!
//! Run with `cargo run --example counter_trap -- 16`.

use costlab::domains::CounterInstance;
use costlab::eval::{EvalKind, EvaluatorConfig};
use costlab::problem::Problem;
use costlab::search::{run_search, Budget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(16);
    let counter = CounterInstance::trap(k)?;
    println!("{}  (goal {})", counter.describe(), counter.goal);
    for kind in [EvalKind::Cost, EvalKind::Size] {
        let run = run_search(&counter, &EvaluatorConfig::new(kind), &Budget::prove())?;
        let best = run.best().expect("the counter is always solvable");
        println!(
            "{:>5}: first solution after {:>6} expansions, optimal cost {} in {} steps, proof after {} expansions",
            kind.key(),
            run.metrics.discovery_expansions().unwrap_or(0),
            best.cost,
            best.size,
            run.metrics.expansions,
        );
    }
    Ok(())
}
