mod common;

use std::collections::BTreeSet;

use common::{reference_optimum, Graph};
use costlab::analysis::{
    cheap_subspace_depths, compute_footprint, expansion_set_compare, heuristic_error, oracle_solve, CompareError,
    ExpansionSet, FootprintError, OracleError, ReferenceSolution,
};
use costlab::domains::{
    eps_threshold_exact, make_ferry, make_rendezvous, make_swap, tree_predictions, CounterHeuristic, CounterInstance,
};
use costlab::eval::{epsilon_of, EvalKind, EvaluatorConfig, PathCosts, TieBreak};
use costlab::problem::{AdmissibleOnly, Heuristics, Problem};
use costlab::search::{Budget, RunResult, Search};
use num_bigint::BigUint;
use num_rational::Ratio;

fn recorded<P: Problem>(p: &P, config: EvaluatorConfig, budget: Budget) -> RunResult<P::State, P::Action> {
    Search::new(p, config, budget).record_expansions(true).run().unwrap()
}

#[test]
fn oracle_on_the_small_counter() {
    let c = CounterInstance::new(4, 14).unwrap();
    let r = oracle_solve(&c, 1 << 10).unwrap();
    assert_eq!(r.optimal_cost, 9);
    assert_eq!(r.optimal_size_among_cheapest, 2);
    assert_eq!(r.smallest_size, 2);
    assert_eq!(r.plan.len(), 2);
}

#[test]
fn oracle_on_swaps() {
    let r = oracle_solve(&make_swap(2).unwrap(), 1 << 20).unwrap();
    assert_eq!((r.optimal_cost, r.optimal_size_among_cheapest), (20004, 6));
    assert_eq!(oracle_solve(&make_swap(3).unwrap(), 1 << 20).unwrap().optimal_cost, 40004);
}

#[test]
fn oracle_agrees_with_reference() {
    for k in 2..=6 {
        for goal in 0..1u64 << k {
            let c = CounterInstance::new(k, goal).unwrap();
            assert_eq!(Some(oracle_solve(&c, 1 << 10).unwrap().optimal_cost), reference_optimum(&c));
        }
    }
    for t in [make_ferry(2, 2, 2).unwrap(), make_ferry(3, 1, 2).unwrap()] {
        assert_eq!(Some(oracle_solve(&t, 1 << 20).unwrap().optimal_cost), reference_optimum(&t));
    }
}

#[test]
fn oracle_edge_cases() {
    let at_goal = oracle_solve(&CounterInstance::new(4, 0).unwrap(), 16).unwrap();
    assert_eq!((at_goal.optimal_cost, at_goal.optimal_size_among_cheapest), (0, 0));
    assert!(at_goal.plan.is_empty());
    let stuck = Graph::new(3, &[(0, 1, 1)], &[2]);
    assert_eq!(oracle_solve(&stuck, 16).unwrap_err(), OracleError::Unsolvable);
    let big = CounterInstance::new(10, 600).unwrap();
    assert_eq!(oracle_solve(&big, 100).unwrap_err(), OracleError::CapExceeded { cap: 100 });
}

#[test]
fn footprint_of_the_small_counter() {
    let c = CounterInstance::new(4, 14).unwrap();
    let f = compute_footprint(&c, 1 << 10).unwrap();
    assert_eq!(f.f_star, 9);
    let strict: BTreeSet<u64> = (0..=8).chain([15]).collect();
    assert_eq!(f.strict_set, strict);
    assert_eq!(f.boundary_set, BTreeSet::from([9, 14]));
}

#[test]
fn perfect_heuristics_leave_no_strict_states() {
    let c = CounterInstance::new(5, 27).unwrap().with_heuristic(CounterHeuristic::Exact);
    let f = compute_footprint(&c, 1 << 10).unwrap();
    assert_eq!(f.strict_size(), 0);
    assert!(f.boundary_set.contains(&0));
}

#[test]
fn footprint_rejects_bad_heuristics() {
    let over = Graph::new(3, &[(0, 1, 1), (1, 2, 1)], &[2]).with_h(vec![5, 1, 0]);
    assert_eq!(
        compute_footprint(&over, 16).unwrap_err(),
        FootprintError::Inconsistent { h_u: 5, cost: 1, h_v: 1 }
    );
    let diamond =
        Graph::new(5, &[(0, 1, 1), (0, 2, 2), (1, 3, 5), (2, 3, 1), (3, 4, 10)], &[4]).with_h(vec![0, 0, 10, 0, 0]);
    assert!(matches!(compute_footprint(&diamond, 16), Err(FootprintError::Inconsistent { .. })));
    let lying = Graph::new(2, &[(0, 1, 1), (1, 0, 1)], &[1]).with_h(vec![3, 0]);
    assert!(matches!(compute_footprint(&lying, 16), Err(FootprintError::Inconsistent { .. })));
}

#[test]
fn every_proof_covers_the_strict_set() {
    let t = AdmissibleOnly(make_swap(2).unwrap());
    let f = compute_footprint(&t, 1 << 20).unwrap();
    for kind in [EvalKind::Cost, EvalKind::Size, EvalKind::SizeCostSensitive, EvalKind::Hybrid, EvalKind::NegatedCost] {
        let run = recorded(&t, EvaluatorConfig::new(kind), Budget::prove());
        let set = ExpansionSet::from_run(t.describe(), &run);
        assert!(f.strict_set.is_subset(&set.states), "{kind}");
    }
}

#[test]
fn tie_breaking_order_does_not_change_the_expanded_set() {
    for goal in 0..64 {
        let c = CounterInstance::new(6, goal).unwrap();
        let lifo = recorded(&c, EvaluatorConfig::new(EvalKind::Cost), Budget::prove());
        let fifo = recorded(&c, EvaluatorConfig::new(EvalKind::Cost).with_tie_break(TieBreak::Fifo), Budget::prove());
        let a = ExpansionSet::from_run(c.describe(), &lifo);
        let b = ExpansionSet::from_run(c.describe(), &fifo);
        let f = compute_footprint(&c, 1 << 10).unwrap();
        let cmp = expansion_set_compare(&a.restricted_to(&f.strict_set), &b.restricted_to(&f.strict_set)).unwrap();
        assert!(cmp.equal_states, "goal {goal}");
    }
}

#[test]
fn negated_cost_and_cost_share_the_strict_states() {
    for goal in 1..16 {
        let c = CounterInstance::new(4, goal).unwrap();
        let a = ExpansionSet::from_run(c.describe(), &recorded(&c, EvaluatorConfig::new(EvalKind::Cost), Budget::prove()));
        let b = ExpansionSet::from_run(
            c.describe(),
            &recorded(&c, EvaluatorConfig::new(EvalKind::NegatedCost), Budget::prove()),
        );
        let f = compute_footprint(&c, 1 << 10).unwrap();
        let cmp = expansion_set_compare(&a.restricted_to(&f.strict_set), &b.restricted_to(&f.strict_set)).unwrap();
        assert!(cmp.equal_states, "goal {goal}: {:?} vs {:?}", cmp.only_in_a, cmp.only_in_b);
        assert!(f.strict_set.is_subset(&a.states) && f.strict_set.is_subset(&b.states), "goal {goal}");
    }
}

#[test]
fn comparisons_need_matching_finished_runs() {
    let a = CounterInstance::new(4, 14).unwrap();
    let b = CounterInstance::new(4, 13).unwrap();
    let run_a = ExpansionSet::from_run(a.describe(), &recorded(&a, EvaluatorConfig::new(EvalKind::Cost), Budget::prove()));
    let run_b = ExpansionSet::from_run(b.describe(), &recorded(&b, EvaluatorConfig::new(EvalKind::Cost), Budget::prove()));
    assert!(matches!(expansion_set_compare(&run_a, &run_b), Err(CompareError::DifferentInstances(..))));
    let cut = ExpansionSet::from_run(
        a.describe(),
        &recorded(&a, EvaluatorConfig::new(EvalKind::Cost), Budget::expansions(3)),
    );
    assert!(matches!(expansion_set_compare(&run_a, &cut), Err(CompareError::NotProved(_))));
    assert!(expansion_set_compare(&run_a, &run_a).unwrap().equal_states);
}

#[test]
fn heuristic_error_against_the_reference() {
    let reference = ReferenceSolution { cost: 9, size: 2 };
    let root = heuristic_error(PathCosts::default(), &Heuristics::ZERO, reference);
    assert_eq!((root.e_c, root.e_s), (9, 2));
    let after_wrap = heuristic_error(PathCosts { g_cost: 8, g_size: 1 }, &Heuristics::ZERO, reference);
    assert_eq!((after_wrap.e_c, after_wrap.e_s), (1, 1));
    let exact = Heuristics { h_c: 9, h_s: 2, h_s_hat: 2, h_c_admissible: 9 };
    let perfect = heuristic_error(PathCosts::default(), &exact, reference);
    assert_eq!((perfect.e_c, perfect.e_s), (0, 0));
}

#[test]
fn tree_prediction_arithmetic() {
    let p = tree_predictions(2, 2, Ratio::new(1, 4), Ratio::from_integer(10));
    assert_eq!(p.depth, Ratio::from_integer(16));
    let q = tree_predictions(2, 2, Ratio::new(1, 2), Ratio::from_integer(2));
    assert_eq!(q.cost_based_bound, BigUint::from(36u32));
    assert_eq!(eps_threshold_exact(4), Some(Ratio::new(1, 3)));
}

#[test]
fn cost_spectra() {
    assert_eq!(epsilon_of(&make_rendezvous(1).unwrap()).epsilon, Ratio::new(1, 10000));
    assert_eq!(epsilon_of(&make_swap(2).unwrap()).epsilon, Ratio::new(1, 10000));
    for k in 2..12 {
        assert_eq!(epsilon_of(&CounterInstance::new(k, 1).unwrap()).epsilon, Ratio::new(2, 1 << k));
    }
}

#[test]
fn cost_ordered_search_digs_cheap_subspaces_deep_enough() {
    for (n, stranded, idle) in [(2, 1, 3), (3, 1, 3), (2, 2, 2), (3, 2, 2)] {
        let t = make_ferry(n, stranded, idle).unwrap();
        let run = recorded(&t, EvaluatorConfig::new(EvalKind::Cost), Budget::prove());
        let best = run.best_cost().unwrap();
        let depths = cheap_subspace_depths(&t, &run.expanded, run.expanded.len(), best);
        assert!(!depths.is_empty());
        let c_min = t.min_edge_cost();
        for d in &depths {
            assert!(d.depth >= d.required_depth(c_min), "{}: {d:?}", t.describe());
            assert!(d.depth <= d.reachable_depth);
        }
        assert!(depths.iter().any(|d| d.required_depth(c_min) > 0));
    }
}
