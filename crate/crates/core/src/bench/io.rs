//! Suite layout on disk:
//!
//! ```text
//! <dir>/manifest.jsonl      one ManifestEntry per case
//! <dir>/qa.jsonl            Layer-1 questions for every case
//! <dir>/cases/<id>.json     one BenchCase per file
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::questions::{layer1_questions, QaItem};
use super::types::{BenchCase, LogicType, Verdict};
use crate::fsutil::{read_json, read_jsonl, to_jsonl, write_atomic};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub case_id: String,
    pub logic_type: LogicType,
    pub seed: u64,
    pub ground_truth: Verdict,
    /// Path of the case file relative to the suite directory.
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteFiles {
    pub manifest: PathBuf,
    pub qa: PathBuf,
    pub cases: Vec<PathBuf>,
}

impl SuiteFiles {
    pub fn in_dir(dir: &Path) -> (PathBuf, PathBuf) {
        (dir.join("manifest.jsonl"), dir.join("qa.jsonl"))
    }
}

pub fn write_suite(dir: &Path, cases: &[BenchCase]) -> Result<SuiteFiles> {
    let (manifest_path, qa_path) = SuiteFiles::in_dir(dir);
    let mut manifest = Vec::with_capacity(cases.len());
    let mut qa = Vec::new();
    let mut files = Vec::with_capacity(cases.len());
    for case in cases {
        let rel = format!("cases/{}.json", case.case_id);
        let path = dir.join(&rel);
        let mut bytes = serde_json::to_vec_pretty(case)?;
        bytes.push(b'\n');
        write_atomic(&path, &bytes)?;
        files.push(path);
        manifest.push(ManifestEntry {
            case_id: case.case_id.clone(),
            logic_type: case.logic_type,
            seed: case.seed,
            ground_truth: case.ground_truth,
            file: rel,
        });
        qa.extend(layer1_questions(case));
    }
    write_atomic(&manifest_path, &to_jsonl(&manifest)?)?;
    write_atomic(&qa_path, &to_jsonl(&qa)?)?;
    Ok(SuiteFiles {
        manifest: manifest_path,
        qa: qa_path,
        cases: files,
    })
}

pub fn read_manifest(dir: &Path) -> Result<Vec<ManifestEntry>> {
    read_jsonl(&dir.join("manifest.jsonl"), |_| Ok(()))
}

pub fn read_case(dir: &Path, entry: &ManifestEntry) -> Result<BenchCase> {
    read_json(&dir.join(&entry.file))
}

pub fn read_qa(dir: &Path) -> Result<Vec<QaItem>> {
    read_jsonl(&dir.join("qa.jsonl"), |_| Ok(()))
}
