use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Digest entry for one emitted data file.
#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

/// Reproducibility record written alongside every data file: the resolved
/// parameter set, the seed when one exists, and content digests. Two runs
/// with identical manifests (wall time aside) produce byte-identical files.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub artifact_version: String,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub wall_time_s: f64,
    pub outputs: Vec<OutputDigest>,
}

pub struct ManifestBuilder {
    command: String,
    parameters: serde_json::Value,
    seed: Option<u64>,
    started: Instant,
    outputs: Vec<OutputDigest>,
    out_dir: PathBuf,
}

impl ManifestBuilder {
    pub fn new(
        command: &str,
        out_dir: &Path,
        parameters: serde_json::Value,
        seed: Option<u64>,
    ) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            seed,
            started: Instant::now(),
            outputs: Vec::new(),
            out_dir: out_dir.to_path_buf(),
        }
    }

    /// Writes a data file into the output directory and records its digest.
    pub fn write_output(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.out_dir)
            .with_context(|| format!("creating output directory {}", self.out_dir.display()))?;
        let path = self.out_dir.join(name);
        std::fs::write(&path, contents)
            .with_context(|| format!("writing {}", path.display()))?;
        let digest = Sha256::digest(contents.as_bytes());
        self.outputs.push(OutputDigest {
            path: name.to_string(),
            sha256: hex::encode(digest),
        });
        Ok(path)
    }

    /// Writes `<command>.manifest.json` next to the data files.
    pub fn finish(self) -> Result<()> {
        if self.outputs.is_empty() {
            return Ok(());
        }
        let manifest = RunManifest {
            command: self.command.clone(),
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: self.parameters,
            seed: self.seed,
            wall_time_s: self.started.elapsed().as_secs_f64(),
            outputs: self.outputs,
        };
        let path = self.out_dir.join(format!("{}.manifest.json", self.command));
        let text = serde_json::to_string_pretty(&manifest)?;
        std::fs::write(&path, text)
            .with_context(|| format!("writing manifest {}", path.display()))?;
        Ok(())
    }
}

/// Fixed-format float for CSV cells: 13 significant digits, scientific,
/// locale-independent.
pub fn csv_float(x: f64) -> String {
    format!("{x:.12e}")
}
