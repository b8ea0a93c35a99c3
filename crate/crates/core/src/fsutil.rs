//! Atomic file writes and line-checked JSONL reading.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::{Error, LineError, Result};

/// Writes `bytes` to a temp file next to `path`, then renames it over `path`.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub(crate) fn to_jsonl<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for r in rows {
        serde_json::to_writer(&mut out, r)?;
        out.push(b'\n');
    }
    Ok(out)
}

/// Parses every non-blank line, running `check` on each value. All
/// offending lines are collected before failing.
pub(crate) fn parse_jsonl<T, R, F>(input: R, label: &Path, mut check: F) -> Result<Vec<T>>
where
    T: DeserializeOwned,
    R: BufRead,
    F: FnMut(&T) -> Result<()>,
{
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::io(label, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<T>(&line)
            .map_err(Error::from)
            .and_then(|v| check(&v).map(|_| v))
        {
            Ok(v) => rows.push(v),
            Err(e) => errors.push(LineError {
                line: idx + 1,
                message: e.to_string(),
            }),
        }
    }
    if errors.is_empty() {
        Ok(rows)
    } else {
        Err(Error::Lines {
            input: label.display().to_string(),
            errors,
        })
    }
}

pub(crate) fn read_jsonl<T, F>(path: &Path, check: F) -> Result<Vec<T>>
where
    T: DeserializeOwned,
    F: FnMut(&T) -> Result<()>,
{
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_jsonl(BufReader::new(file), path, check)
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
