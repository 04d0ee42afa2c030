//! File formats, provenance sidecars and the `gapcover` command line on top
//! of [`gapcover_core`].

pub mod cli;
pub mod formats;
pub mod provenance;
