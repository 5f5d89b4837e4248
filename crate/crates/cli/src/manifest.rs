// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::args::Command;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Written next to every run's outputs. Replaying the recorded command
/// reproduces the data files byte for byte; only `created_unix` changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
    pub outputs: Vec<String>,
    pub created_unix: u64,
}

impl RunManifest {
    pub fn new(command: Command, inputs: Vec<String>, seed: Option<u64>, out_dir: &Path, outputs: Vec<String>) -> Self {
        let created_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            inputs,
            seed,
            out_dir: out_dir.to_path_buf(),
            outputs,
            created_unix,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}
