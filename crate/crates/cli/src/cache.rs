//! Append-only JSONL run log keyed by a fingerprint of the canonical
//! command arguments.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PATH: &str = "cubefree-cache.jsonl";
pub const TOOL_VERSION: &str = concat!("cubefree ", env!("CARGO_PKG_VERSION"));

/// Short hash identifying the tool build that wrote a record.
pub fn tool_version_hash() -> String {
    hex::encode(&Sha256::digest(TOOL_VERSION.as_bytes())[..8])
}

/// sha256 of the canonical JSON form of a command's arguments.
pub fn fingerprint(canonical: &Value) -> String {
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: u32,
    pub timestamp: String,
    pub command: String,
    pub fingerprint: String,
    pub payload: Value,
    pub tool_version: String,
}

impl RunRecord {
    pub fn new(command: String, fingerprint: String, payload: Value) -> Self {
        RunRecord {
            schema: SCHEMA_VERSION,
            timestamp: chrono::Utc::now().to_rfc3339(),
            command,
            fingerprint,
            payload,
            tool_version: tool_version_hash(),
        }
    }
}

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Every readable record of the current schema, in file order, along
    /// with the number of lines skipped as corrupt.
    pub fn records(&self) -> Result<(Vec<RunRecord>, usize)> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
            Err(e) => return Err(e).with_context(|| format!("reading {}", self.path.display())),
        };
        let mut records = Vec::new();
        let mut corrupt = 0;
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<RunRecord>(line) {
                Ok(r) if r.schema == SCHEMA_VERSION => records.push(r),
                Ok(_) => {}
                Err(e) => {
                    corrupt += 1;
                    eprintln!(
                        "warning: skipping corrupt cache line {} in {}: {e}",
                        lineno + 1,
                        self.path.display()
                    );
                }
            }
        }
        Ok((records, corrupt))
    }

    /// The most recent record with this fingerprint.
    pub fn lookup(&self, fingerprint: &str) -> Result<Option<RunRecord>> {
        let (records, _) = self.records()?;
        Ok(records
            .into_iter()
            .rev()
            .find(|r| r.fingerprint == fingerprint))
    }

    /// Appends one record as a single write.
    pub fn append(&self, record: &RunRecord) -> Result<()> {
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("opening {}", self.path.display()))?;
        file.write_all(line.as_bytes())
            .with_context(|| format!("writing {}", self.path.display()))
    }

    pub fn clear(&self) -> Result<bool> {
        match fs::remove_file(&self.path) {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(false),
            Err(e) => Err(e).with_context(|| format!("removing {}", self.path.display())),
        }
    }
}
