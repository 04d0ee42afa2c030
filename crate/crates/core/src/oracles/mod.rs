//! Ground-truth solvers used to check every reduction.

pub mod brute;
pub mod exact;
pub mod greedy;
pub mod verify;

pub use brute::{brute_clique, brute_ksum, brute_sat, brute_vectorsum};
pub use exact::{exact_opt, exact_opt_model, exhaustive_opt, CoverageModel, ExactResult};
pub use greedy::{greedy_cover, GreedyCover};
pub use verify::{verify_pipeline, SourceProblem, Status, VerdictLine, VerifyReport};
