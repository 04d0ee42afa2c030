//! Front-end reductions into partitioned set cover and the pipelines that
//! chain them through a gap-gadget.

pub mod clique;
pub mod ksum;
pub mod pipeline;
pub mod sat;
pub mod vectorsum;

pub use clique::clique_to_setcover;
pub use ksum::{ksum_to_vectorsum, DigitParams};
pub use pipeline::{
    pipeline_clique, pipeline_ksum, pipeline_sat, GappedInstance, Pipeline, PipelineOptions,
    PipelineParams, SourceKind,
};
pub use sat::sat_to_setcover;
pub use vectorsum::vectorsum_to_setcover;
