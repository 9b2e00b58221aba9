//! Run manifest emitted alongside every file output.
//!
//! The manifest records the fully resolved invocation — every default
//! materialized — so that replaying `resolved_args` against the same tool
//! version reproduces the outputs byte for byte.

use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Canonical argv equivalent of this run, defaults included.
    pub resolved_args: Vec<String>,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub threads: usize,
    pub outputs: Vec<String>,
    pub elapsed_seconds: f64,
}

impl RunManifest {
    pub fn new(command: &str, resolved_args: Vec<String>) -> Self {
        RunManifest {
            tool: "maskuq".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            resolved_args,
            inputs: Vec::new(),
            seed: None,
            threads: rayon::current_num_threads(),
            outputs: Vec::new(),
            elapsed_seconds: 0.0,
        }
    }

    /// Manifest path for a primary output: `matrix.csv` → `matrix.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        output.with_extension("manifest.json")
    }

    pub fn write_alongside(&self, output: &Path) -> std::io::Result<()> {
        let body = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(Self::path_for(output), body + "\n")
    }
}
