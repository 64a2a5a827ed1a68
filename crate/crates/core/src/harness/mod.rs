//! Experiment orchestration: configs, streamed result files, scoring,
//! sweeps and summaries.

mod config;
mod run;
mod score;
mod summary;
mod sweep;

pub use config::{BudgetSpec, ConfigError, EvaluatorSpec, ExperimentConfig, Instance};
pub use run::{read_results, run_experiment, HarnessError, IncumbentLine, MetricsLine, ResultLine, RunOutcome};
pub use score::{best_known_over, ipc_score, ScoreError, ScoreRow, ScoreTable};
pub use summary::{summarize, SUMMARY_HEADER};
pub use sweep::{sweep_goals, SweepReport, SweepRow};
