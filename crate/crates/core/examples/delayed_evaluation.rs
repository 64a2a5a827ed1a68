//! Delayed evaluation scores a node with its parent's heuristic. With a
//! perfect heuristic every prefix of the optimal path then overshoots the
//! optimum by exactly the cost of its last edge.

use costlab::eval::{delayed_heuristics, eval_cost, PathCosts, Rational};
use costlab::problem::Heuristics;

fn main() {
    let edges = [3u64, 1, 4, 1, 5];
    let total: u64 = edges.iter().sum();
    let h_at = |i: usize| {
        let rest: u64 = edges[i..].iter().sum();
        Heuristics { h_c: rest, h_s: 0, h_s_hat: 0, h_c_admissible: rest }
    };
    let mut g = 0;
    for i in 0..=edges.len() {
        let own = h_at(i);
        let parent = (i > 0).then(|| h_at(i - 1));
        let h = delayed_heuristics(parent.as_ref(), &own);
        let f = eval_cost(PathCosts { g_cost: g, g_size: i as u64 }, h, Rational::from_integer(1));
        let last = if i > 0 { edges[i - 1] } else { 0 };
        println!("prefix {i}: f = {f:>2}, f - f* = {}, last edge {last}", f - Rational::from_integer(total as i64));
        if i < edges.len() {
            g += edges[i];
        }
    }
}
