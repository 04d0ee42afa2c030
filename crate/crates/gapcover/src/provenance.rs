//! Provenance sidecars: input and output hashes plus the parameters a run
//! used. No timestamps, so identical runs give identical sidecars.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use gapcover_core::reductions::PipelineParams;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileRef {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputFiles {
    /// Padded source instance.
    pub source: FileRef,
    /// Materialized reduced instance, when it fit the size budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<FileRef>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: Vec<FileRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gadget: Option<FileRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineParams>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<OutputFiles>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub written: Vec<FileRef>,
    pub seed: u64,
    pub work_budget: u64,
    pub size_budget: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl FileRef {
    /// Reference to a file already on disk; `path` is recorded as given.
    pub fn of(path: &Path, recorded: impl Into<String>) -> Result<Self> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(FileRef {
            path: recorded.into(),
            sha256: sha256_hex(&bytes),
        })
    }

    /// Locate the file (as recorded, then next to the sidecar) and check
    /// its hash; returns its contents.
    pub fn load(&self, sidecar_dir: &Path) -> Result<String> {
        let direct = PathBuf::from(&self.path);
        let candidates = [direct.clone(), sidecar_dir.join(&direct)];
        let path = candidates
            .iter()
            .find(|p| p.is_file())
            .with_context(|| format!("{} not found", self.path))?;
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let actual = sha256_hex(&bytes);
        if actual != self.sha256 {
            bail!(
                "{}: sha256 {} does not match recorded {}",
                path.display(),
                actual,
                self.sha256
            );
        }
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }
}

impl Provenance {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("provenance serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("parsing provenance sidecar")
    }
}
