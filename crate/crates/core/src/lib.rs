//! A laboratory for best-first branch-and-bound search that compares
//! cost-ordered and size-ordered evaluation on domains with widely varying
//! action costs.
//!
//! ```
//! use costlab::domains::CounterInstance;
//! use costlab::eval::{EvalKind, EvaluatorConfig};
//! use costlab::search::{run_search, Budget};
//!
//! let counter = CounterInstance::new(4, 14).unwrap();
//! let run = run_search(&counter, &EvaluatorConfig::new(EvalKind::Size), &Budget::prove()).unwrap();
//! assert_eq!(run.best_cost(), Some(9));
//! ```

pub mod analysis;
pub mod domains;
pub mod eval;
pub mod harness;
pub mod problem;
pub mod search;
