//! Computes which states every cost-optimal proof must expand and checks
//! that differently ordered searches all cover them.

use costlab::analysis::{compute_footprint, ExpansionSet};
use costlab::domains::CounterInstance;
use costlab::eval::{EvalKind, EvaluatorConfig, TieBreak};
use costlab::problem::Problem;
use costlab::search::{Budget, Search};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let counter = CounterInstance::new(6, 50)?;
    let report = compute_footprint(&counter, 1 << 16)?;
    println!(
        "{}: f* = {}, {} states below f*, {} on the boundary",
        counter.describe(),
        report.f_star,
        report.strict_size(),
        report.boundary_size()
    );
    let configs = [
        EvaluatorConfig::new(EvalKind::Cost),
        EvaluatorConfig::new(EvalKind::Cost).with_tie_break(TieBreak::Fifo),
        EvaluatorConfig::new(EvalKind::NegatedCost),
        EvaluatorConfig::new(EvalKind::Size),
    ];
    for config in configs {
        let run = Search::new(&counter, config, Budget::prove()).record_expansions(true).run()?;
        let set = ExpansionSet::from_run(counter.describe(), &run);
        let covered = report.strict_set.is_subset(&set.states);
        println!("{:<14} expanded {:>3} states, covers the strict set: {covered}", config.label(), set.states.len());
    }
    Ok(())
}
