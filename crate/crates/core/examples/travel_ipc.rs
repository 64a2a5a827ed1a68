//! Compares evaluators on small travel instances and scores them the way
//! planning competitions do: best known cost over found cost, summed.

use std::collections::BTreeMap;

use costlab::domains::{make_ferry, make_swap, TravelInstance};
use costlab::eval::{EvalKind, EvaluatorConfig};
use costlab::harness::{best_known_over, ipc_score};
use costlab::problem::{Cost, Problem};
use costlab::search::{run_search, Budget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instances: Vec<TravelInstance> = vec![make_swap(2)?, make_swap(3)?, make_ferry(2, 2, 4)?, make_ferry(2, 2, 12)?];
    let evaluators = [
        ("cost*5", EvaluatorConfig::weighted(EvalKind::Cost, 5)),
        ("size-cs", EvaluatorConfig::new(EvalKind::SizeCostSensitive)),
        ("hybrid", EvaluatorConfig::new(EvalKind::Hybrid)),
    ];
    let budget = Budget::expansions(20_000);
    let mut results: Vec<BTreeMap<String, Option<Cost>>> = Vec::new();
    for (_, config) in &evaluators {
        let mut found = BTreeMap::new();
        for t in &instances {
            found.insert(t.describe(), run_search(t, config, &budget)?.best_cost());
        }
        results.push(found);
    }
    let best = best_known_over(&results);
    for ((name, _), found) in evaluators.iter().zip(&results) {
        let table = ipc_score(found, &best)?;
        println!("{name:>8}: score {:.1}", table.aggregate);
        for row in &table.rows {
            println!("          {:<32} found {:?} (best {})", row.problem, row.found, row.best_known);
        }
    }
    Ok(())
}
