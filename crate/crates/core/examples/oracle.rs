//! Exhaustive optimal solutions of small instances, used as ground truth.

use costlab::analysis::oracle_solve;
use costlab::domains::{make_swap, CounterInstance};
use costlab::problem::Problem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let counter = CounterInstance::new(4, 14)?;
    let swap = make_swap(2)?;
    let a = oracle_solve(&counter, 1 << 10)?;
    let b = oracle_solve(&swap, 1 << 20)?;
    for (name, cost, size, plan) in [
        (counter.describe(), a.optimal_cost, a.optimal_size_among_cheapest, a.plan.iter().map(ToString::to_string).collect::<Vec<_>>()),
        (swap.describe(), b.optimal_cost, b.optimal_size_among_cheapest, b.plan.iter().map(ToString::to_string).collect()),
    ] {
        println!("{name}: cost {cost}, {size} steps: {}", plan.join(" "));
    }
    Ok(())
}
