//! Ground-truth oracles and instrumentation for reasoning about runs.

mod bounds;
mod footprint;
mod oracle;
mod subspace;

pub use bounds::{heuristic_error, worst_case_bound, BoundError, ErrorRecord, ReferenceSolution};
pub use footprint::{
    compute_footprint, expansion_set_compare, verify_admissible_consistent, CompareError, ExpansionSet,
    FootprintError, FootprintReport, SetComparison,
};
pub use oracle::{oracle_solve, ExplicitGraph, OracleError, OracleReport};
pub use subspace::{cheap_subspace_depths, SubspaceDepth};
