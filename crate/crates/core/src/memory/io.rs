//! Flat-file formats: JSONL memory dumps and TOML source-registry files.
//!
//! ```toml
//! default_prior = 0.5
//!
//! [priors]
//! USER_A = 0.9
//! USER_B = 0.3
//! ```

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MemoryItem, MemoryStore, SourceRegistry};
use crate::{Error, LineError, Result};

pub fn write_memory_dump<W: Write>(store: &MemoryStore, mut out: W) -> Result<()> {
    for item in store.items() {
        serde_json::to_writer(&mut out, item)?;
        out.write_all(b"\n")
            .map_err(|e| Error::io("<memory dump>", e))?;
    }
    Ok(())
}

/// Reads a JSONL dump into a store. Every malformed line is reported.
pub fn read_memory_dump<R: BufRead>(
    input: R,
    dimension: usize,
    registry: SourceRegistry,
) -> Result<MemoryStore> {
    let mut store = MemoryStore::new(dimension, registry)?;
    let mut errors = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<memory dump>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str::<MemoryItem>(&line)
            .map_err(Error::from)
            .and_then(|item| store.insert(item));
        if let Err(e) = parsed {
            errors.push(LineError {
                line: idx + 1,
                message: e.to_string(),
            });
        }
    }
    if errors.is_empty() {
        Ok(store)
    } else {
        Err(Error::Lines {
            input: "<memory dump>".into(),
            errors,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryFile {
    #[serde(default = "default_prior")]
    pub default_prior: f64,
    #[serde(default)]
    pub priors: BTreeMap<String, f64>,
}

fn default_prior() -> f64 {
    0.5
}

impl RegistryFile {
    pub fn into_registry(self) -> Result<SourceRegistry> {
        let mut reg = SourceRegistry::new(self.default_prior)?;
        for (k, v) in self.priors {
            reg.set(k, v)?;
        }
        Ok(reg)
    }
}

pub fn read_registry(path: &Path) -> Result<SourceRegistry> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    toml::from_str::<RegistryFile>(&text)?.into_registry()
}
