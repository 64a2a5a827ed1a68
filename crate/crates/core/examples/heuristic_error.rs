//! Heuristic error against a reference solution and the worst-case
//! expansion bound it implies.

use costlab::analysis::{heuristic_error, worst_case_bound, ReferenceSolution};
use costlab::eval::PathCosts;
use costlab::problem::Heuristics;
use num_rational::Ratio;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = PathCosts { g_cost: 0, g_size: 0 };
    let h = Heuristics { h_c: 0, h_s: 0, h_s_hat: 0, h_c_admissible: 0 };
    let err = heuristic_error(root, &h, ReferenceSolution { cost: 9, size: 2 });
    println!("blind root of counter(4, 14): cost error {}, size error {}", err.e_c, err.e_s);
    for (min, max) in [(1u64, 1u64), (1, 2), (1, 8)] {
        let bound = worst_case_bound(2, 10, Ratio::from_integer(min), Ratio::from_integer(max))?;
        println!("b=2, d=10, gradients {min}..{max}: at most {bound} nodes");
    }
    Ok(())
}
