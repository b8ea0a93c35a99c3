use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{answer_layer1, ingest_case, run_reference_agent, AgentConfig, AuditRecord};
use crate::bench::{BenchCase, Mode};
use crate::fsutil::{to_jsonl, write_atomic};
use crate::probe::{read_transcripts, write_transcripts, ProbeTranscript, QaAnswer};
use crate::{Result, TOOL_VERSION};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub tool_version: String,
    pub config: AgentConfig,
    /// Modes covered by the transcripts, in run order.
    pub modes: Vec<Mode>,
    pub transcripts: Vec<ProbeTranscript>,
    pub audit: Vec<AuditRecord>,
    pub answers: Vec<QaAnswer>,
}

/// Runs every case independently and in parallel; output order follows
/// `cases`.
pub fn run_suite(cases: &[BenchCase], cfg: &AgentConfig) -> Result<RunResult> {
    cfg.validate()?;
    let per_case = cases
        .par_iter()
        .map(|case| {
            let (t, a) = run_reference_agent(case, cfg)?;
            let store = ingest_case(case, cfg.mode, cfg)?;
            Ok((t, a, answer_layer1(case, &store, cfg)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut result = RunResult {
        tool_version: TOOL_VERSION.to_owned(),
        config: cfg.clone(),
        modes: vec![cfg.mode],
        transcripts: Vec::with_capacity(cases.len()),
        audit: Vec::with_capacity(cases.len()),
        answers: Vec::new(),
    };
    for (t, a, qa) in per_case {
        result.transcripts.push(t);
        result.audit.push(a);
        result.answers.extend(qa);
    }
    Ok(result)
}

impl RunResult {
    /// Appends another run of the same suite, typically in the other mode.
    pub fn extend(&mut self, other: RunResult) {
        self.modes.extend(other.modes);
        self.transcripts.extend(other.transcripts);
        self.audit.extend(other.audit);
        self.answers.extend(other.answers);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFiles {
    pub transcripts: PathBuf,
    pub audit: PathBuf,
    pub answers: PathBuf,
    pub config: PathBuf,
}

impl RunFiles {
    pub fn in_dir(dir: &Path) -> Self {
        Self {
            transcripts: dir.join("transcripts.jsonl"),
            audit: dir.join("audit.jsonl"),
            answers: dir.join("answers.jsonl"),
            config: dir.join("config.json"),
        }
    }
}

pub fn write_run(dir: &Path, result: &RunResult) -> Result<RunFiles> {
    #[derive(Serialize)]
    struct Snapshot<'a> {
        tool_version: &'a str,
        config: &'a AgentConfig,
        modes: &'a [Mode],
    }
    let files = RunFiles::in_dir(dir);
    write_transcripts(&files.transcripts, &result.transcripts)?;
    write_atomic(&files.audit, &to_jsonl(&result.audit)?)?;
    write_atomic(&files.answers, &to_jsonl(&result.answers)?)?;
    let mut cfg = serde_json::to_vec_pretty(&Snapshot {
        tool_version: &result.tool_version,
        config: &result.config,
        modes: &result.modes,
    })?;
    cfg.push(b'\n');
    write_atomic(&files.config, &cfg)?;
    Ok(files)
}

/// Loads externally produced transcripts for scoring; see
/// [`read_transcripts`] for validation.
pub fn replay_transcripts(path: &Path) -> Result<Vec<ProbeTranscript>> {
    read_transcripts(path)
}
