//! Gap-producing reductions for parameterized Set Cover.
//!
//! The crate builds the pieces of a hypercube-style gap amplification and
//! checks every claim about them with exhaustive oracles:
//!
//! * [`universal`]: `(n, k)`-universal sets with an exact verifier.
//! * [`gadget`]: gap-gadgets read off a block-sliced universal set, with
//!   exhaustive checks of their four defining conditions.
//! * [`hypercube`]: the reduction combining a partitioned instance with a
//!   gadget, both materialized and as an implicit coverage model.
//! * [`reductions`]: SAT, multipartite clique, vector-sum and k-SUM front
//!   ends, and pipelines chaining them through the gadget.
//! * [`oracles`]: exact and greedy set cover plus brute-force solvers for
//!   every source problem.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the `gapcover` crate.

#![no_std]

extern crate alloc;

pub mod bits;
pub mod budget;
pub mod error;
pub mod gadget;
pub mod hypercube;
pub mod model;
pub mod oracles;
pub mod reductions;
pub mod universal;

pub use budget::{Budget, DEFAULT_SIZE_BUDGET, DEFAULT_WORK_BUDGET};
pub use error::{Error, Result};
pub use gadget::{AVertex, BVertex, BuiltGadget, GapGadget};
pub use model::{
    pad_partition, CnfFormula, MultipartiteGraph, SetCoverInstance, ValidationReport,
    VectorSumInstance, Violation,
};
pub use universal::UniversalSet;
