//! Append-only JSON-lines result store.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::records::{unix_time, CODE_VERSION};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoreEntry {
    /// Hash of `inputs`.
    pub key: String,
    /// What produced the entry, e.g. `sweep` or `verify`.
    pub kind: String,
    pub inputs: Value,
    pub result: Value,
    pub timestamp: u64,
    pub version: String,
}

impl StoreEntry {
    pub fn new(kind: &str, inputs: Value, result: Value) -> Self {
        Self { key: content_key(&inputs), kind: kind.into(), inputs, result, timestamp: unix_time(), version: CODE_VERSION.into() }
    }
}

/// Hex sha256 of the compact JSON text. Object keys are sorted by
/// `serde_json`, so equal inputs give equal keys.
pub fn content_key(inputs: &Value) -> String {
    let text = serde_json::to_string(inputs).expect("json values serialize");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone)]
pub struct ResultStore {
    path: PathBuf,
}

impl ResultStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends one line with a single write.
    pub fn append(&self, entry: &StoreEntry) -> Result<()> {
        let mut line = serde_json::to_string(entry)?;
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        Ok(())
    }

    /// All entries in file order. A missing file is an empty store.
    pub fn load(&self) -> Result<Vec<StoreEntry>> {
        let f = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(f).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(serde_json::from_str(&line).map_err(|e| Error::Parse(format!("{}:{}: {e}", self.path.display(), i + 1)))?);
        }
        Ok(out)
    }

    /// Latest entry stored under `key`.
    pub fn find(&self, key: &str) -> Result<Option<StoreEntry>> {
        Ok(self.load()?.into_iter().rev().find(|e| e.key == key))
    }
}
