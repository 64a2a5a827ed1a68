//! A k-bit counter driven by increment and decrement. Both operations cost
//! one unit except when they overflow, which costs `2^(k-1)`.

use std::fmt;

use num_rational::Ratio;

use crate::problem::{Cost, Edge, Heuristics, ModelError, Problem};

/// Heuristic family supplied to the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CounterHeuristic {
    /// All estimates are zero.
    #[default]
    Zero,
    /// Exact cost and length to the goal.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CounterAction {
    Increment,
    Decrement,
}

impl fmt::Display for CounterAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CounterAction::Increment => "inc",
            CounterAction::Decrement => "dec",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterInstance {
    pub k: u32,
    pub goal: u64,
    pub wrap_cost: Cost,
    pub step_cost: Cost,
    pub heuristic: CounterHeuristic,
}

impl CounterInstance {
    /// Counter on `k` bits starting at 0 with the given goal value.
    pub fn new(k: u32, goal: u64) -> Result<Self, ModelError> {
        if !(2..=62).contains(&k) {
            return Err(ModelError::InvalidParameter {
                key: "k",
                reason: format!("bit count must lie in 2..=62, got {k}"),
            });
        }
        if goal >= 1u64 << k {
            return Err(ModelError::InvalidParameter {
                key: "goal",
                reason: format!("goal {goal} exceeds 2^{k}-1"),
            });
        }
        Ok(CounterInstance {
            k,
            goal,
            wrap_cost: 1 << (k - 1),
            step_cost: 1,
            heuristic: CounterHeuristic::Zero,
        })
    }

    /// The trap instance: reach `2^k - 2` from 0.
    pub fn trap(k: u32) -> Result<Self, ModelError> {
        Self::new(k, 0).and_then(|c| Self::new(k, c.modulus() - 2))
    }

    pub fn with_heuristic(mut self, heuristic: CounterHeuristic) -> Self {
        self.heuristic = heuristic;
        self
    }

    pub fn modulus(&self) -> u64 {
        1 << self.k
    }

    fn max_value(&self) -> u64 {
        self.modulus() - 1
    }

    /// Cost and length of the increment-only and decrement-only routes from
    /// `state` to the goal.
    fn routes(&self, state: u64) -> [(Cost, u64); 2] {
        let m = self.modulus();
        let up = (self.goal + m - state) % m;
        let down = (state + m - self.goal) % m;
        let up_cost = if up > 0 && self.goal < state {
            (up - 1) * self.step_cost + self.wrap_cost
        } else {
            up * self.step_cost
        };
        let down_cost = if down > 0 && self.goal > state {
            (down - 1) * self.step_cost + self.wrap_cost
        } else {
            down * self.step_cost
        };
        [(up_cost, up), (down_cost, down)]
    }
}

/// The two outgoing edges of a counter value: increment, then decrement.
pub fn counter_children(state: u64, instance: &CounterInstance) -> [Edge<CounterAction, u64>; 2] {
    let max = instance.max_value();
    let (inc_to, inc_cost) = if state == max {
        (0, instance.wrap_cost)
    } else {
        (state + 1, instance.step_cost)
    };
    let (dec_to, dec_cost) = if state == 0 {
        (max, instance.wrap_cost)
    } else {
        (state - 1, instance.step_cost)
    };
    [
        Edge {
            action: CounterAction::Increment,
            cost: inc_cost,
            to: inc_to,
        },
        Edge {
            action: CounterAction::Decrement,
            cost: dec_cost,
            to: dec_to,
        },
    ]
}

/// Raw and normalized costs of the two minimal plans for goal `2^k - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterSolutionCosts {
    pub incrementing: Cost,
    pub wrapping: Cost,
    pub epsilon: Ratio<u64>,
    pub incrementing_normalized: Ratio<u64>,
    pub wrapping_normalized: Ratio<u64>,
}

pub fn counter_solution_costs(k: u32) -> Result<CounterSolutionCosts, ModelError> {
    let c = CounterInstance::trap(k)?;
    let incrementing = c.goal * c.step_cost;
    let wrapping = c.wrap_cost + c.step_cost;
    Ok(CounterSolutionCosts {
        incrementing,
        wrapping,
        epsilon: Ratio::new(c.step_cost, c.wrap_cost),
        incrementing_normalized: Ratio::new(incrementing, c.wrap_cost),
        wrapping_normalized: Ratio::new(wrapping, c.wrap_cost),
    })
}

impl Problem for CounterInstance {
    type State = u64;
    type Action = CounterAction;

    fn initial_state(&self) -> u64 {
        0
    }

    fn is_goal(&self, state: &u64) -> bool {
        *state == self.goal
    }

    fn successors(&self, state: &u64, out: &mut Vec<Edge<CounterAction, u64>>) {
        out.extend(counter_children(*state, self));
    }

    fn heuristics(&self, state: &u64) -> Heuristics {
        match self.heuristic {
            CounterHeuristic::Zero => Heuristics::ZERO,
            CounterHeuristic::Exact => {
                let [up, down] = self.routes(*state);
                let cheapest = up.min(down);
                Heuristics {
                    h_c: cheapest.0,
                    h_s: up.1.min(down.1),
                    h_s_hat: cheapest.1,
                    h_c_admissible: cheapest.0,
                }
            }
        }
    }

    fn action_costs(&self) -> Vec<(String, Cost)> {
        vec![
            ("step".to_string(), self.step_cost),
            ("overflow".to_string(), self.wrap_cost),
        ]
    }

    fn describe(&self) -> String {
        format!("counter(k={},goal={})", self.k, self.goal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(k: u32, state: u64) -> Vec<(u64, Cost)> {
        let c = CounterInstance::new(k, 0).unwrap();
        counter_children(state, &c)
            .into_iter()
            .map(|e| (e.to, e.cost))
            .collect()
    }

    #[test]
    fn children_with_and_without_overflow() {
        assert_eq!(edges(4, 7), vec![(8, 1), (6, 1)]);
        assert_eq!(edges(4, 15), vec![(0, 8), (14, 1)]);
        assert_eq!(edges(4, 0), vec![(1, 1), (15, 8)]);
    }

    #[test]
    fn solution_costs() {
        let c = counter_solution_costs(4).unwrap();
        assert_eq!((c.incrementing, c.wrapping), (14, 9));
        assert_eq!(c.epsilon, Ratio::new(1, 8));
        assert_eq!(c.incrementing_normalized, Ratio::new(7, 4));
        assert_eq!(c.wrapping_normalized, Ratio::new(9, 8));

        let c = counter_solution_costs(10).unwrap();
        assert_eq!((c.incrementing, c.wrapping), (1022, 513));

        let c = counter_solution_costs(2).unwrap();
        assert_eq!((c.incrementing, c.wrapping), (2, 3));
        assert!(counter_solution_costs(1).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(CounterInstance::new(1, 0).is_err());
        assert!(CounterInstance::new(4, 16).is_err());
        assert!(CounterInstance::new(4, 15).is_ok());
    }

    #[test]
    fn exact_heuristic_matches_both_routes() {
        let c = CounterInstance::trap(4).unwrap().with_heuristic(CounterHeuristic::Exact);
        let h0 = c.heuristics(&0);
        assert_eq!((h0.h_c, h0.h_s, h0.h_s_hat), (9, 2, 2));
        let h5 = c.heuristics(&5);
        // up: 9 steps; down: 0..5 by steps, overflow, one more step = 6 + 8
        assert_eq!((h5.h_c, h5.h_s, h5.h_s_hat), (9, 7, 9));
        assert_eq!(c.heuristics(&14), Heuristics::ZERO);
    }
}
