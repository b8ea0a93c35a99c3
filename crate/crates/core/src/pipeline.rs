//! File-level commands behind the `mma` binary.
//!
//! Each command reads its inputs, runs one library stage and writes its
//! outputs atomically into a directory. Every output carries the tool
//! version and the parameters that produced it, so rerunning a command with
//! the same arguments reproduces the same bytes.

use std::path::{Path, PathBuf};

use log::{info, warn};
use serde::{Deserialize, Serialize};

use crate::agent::{run_suite, write_run, AgentConfig, RunFiles, RunResult};
use crate::bench::{
    generate_suite, read_case, read_manifest, read_qa, validate_case, write_suite, BenchCase,
    BenchConfig, Mode, SuiteFiles, TypeCounts,
};
use crate::fsutil::write_atomic;
use crate::probe::{
    aggregate_report_with, read_answers, read_transcripts, score_transcripts, write_report,
    CoreParams, ReportFiles, VerdictStep,
};
use crate::selective::{read_records, write_eval_outputs, EvalFiles, EvalParams, Regime};
use crate::{Error, Result, TOOL_VERSION};

/// Environment variable naming the directory searched for default config
/// files (`bench.toml`, `agent.toml`).
pub const CONFIG_DIR_ENV: &str = "MMA_CONFIG_DIR";

/// Paths shared by the commands of one experiment.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub suite_dir: PathBuf,
    pub results_dir: PathBuf,
    pub reports_dir: PathBuf,
    pub seed: u64,
    pub bench_config: Option<PathBuf>,
    pub agent_config: Option<PathBuf>,
}

impl PipelineConfig {
    /// Checks that every referenced config file exists.
    pub fn validate(&self) -> Result<()> {
        for p in self.bench_config.iter().chain(&self.agent_config) {
            if !p.is_file() {
                return Err(Error::io(p, std::io::ErrorKind::NotFound.into()));
            }
        }
        Ok(())
    }
}

/// `name` inside the directory named by [`CONFIG_DIR_ENV`], if it exists.
pub fn default_config_path(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CONFIG_DIR_ENV)?;
    let path = Path::new(&dir).join(name);
    path.is_file().then_some(path)
}

pub fn load_bench_config(path: Option<&Path>) -> Result<BenchConfig> {
    let Some(path) = path
        .map(Path::to_path_buf)
        .or_else(|| default_config_path("bench.toml"))
    else {
        return Ok(BenchConfig::default());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let cfg: BenchConfig = toml::from_str(&text)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_agent_config(path: Option<&Path>) -> Result<AgentConfig> {
    match path
        .map(Path::to_path_buf)
        .or_else(|| default_config_path("agent.toml"))
    {
        Some(p) => AgentConfig::load(&p),
        None => Ok(AgentConfig::default()),
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

/// Generation parameters written next to the suite as `suite.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSnapshot {
    pub tool_version: String,
    pub seed: u64,
    pub counts: TypeCounts,
    pub config: BenchConfig,
}

/// Generates, validates and writes a suite. Fails with
/// [`Error::InvalidCases`] if any generated case breaks an invariant.
pub fn cmd_gen(
    seed: u64,
    counts: TypeCounts,
    config: &BenchConfig,
    out_dir: &Path,
) -> Result<SuiteFiles> {
    if counts.total() == 0 {
        warn!("all type counts are zero; writing an empty suite");
    }
    let cases = generate_suite(seed, counts, config)?;
    check_cases(&cases)?;
    let files = write_suite(out_dir, &cases)?;
    write_json(
        &out_dir.join("suite.json"),
        &SuiteSnapshot {
            tool_version: TOOL_VERSION.to_owned(),
            seed,
            counts,
            config: config.clone(),
        },
    )?;
    info!("wrote {} cases to {}", cases.len(), out_dir.display());
    Ok(files)
}

fn check_cases(cases: &[BenchCase]) -> Result<()> {
    let problems: Vec<String> = cases
        .iter()
        .flat_map(|c| {
            validate_case(c)
                .into_iter()
                .map(move |v| format!("{}: {}: {}", c.case_id, v.kind, v.message))
        })
        .collect();
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidCases(problems))
    }
}

/// Reads every case listed in the suite manifest.
pub fn load_suite(suite_dir: &Path) -> Result<Vec<BenchCase>> {
    read_manifest(suite_dir)?
        .iter()
        .map(|m| read_case(suite_dir, m))
        .collect()
}

/// Loads a suite and checks every case against the generator invariants.
pub fn cmd_validate(suite_dir: &Path) -> Result<usize> {
    let cases = load_suite(suite_dir)?;
    check_cases(&cases)?;
    Ok(cases.len())
}

/// Runs the reference agent over a suite in each of `modes`.
pub fn cmd_run(
    suite_dir: &Path,
    cfg: &AgentConfig,
    modes: &[Mode],
    out_dir: &Path,
) -> Result<RunFiles> {
    cfg.validate()?;
    if modes.is_empty() {
        return Err(Error::InvalidConfig("at least one mode is required".into()));
    }
    let cases = load_suite(suite_dir)?;
    if cases.is_empty() {
        warn!(
            "suite {} has no cases; writing empty results",
            suite_dir.display()
        );
    }
    let mut result: Option<RunResult> = None;
    for &mode in modes {
        let run = run_suite(&cases, &cfg.clone().with_mode(mode))?;
        match result.as_mut() {
            Some(r) => r.extend(run),
            None => result = Some(run),
        }
    }
    let result = result.expect("modes is nonempty");
    let files = write_run(out_dir, &result)?;
    info!("ran {} cases in {} mode(s)", cases.len(), modes.len());
    Ok(files)
}

/// Scores transcripts against a suite; `answers` adds Layer-1 grading.
pub fn cmd_score(
    suite_dir: &Path,
    transcripts: &Path,
    answers: Option<&Path>,
    params: &CoreParams,
    verdict_step: VerdictStep,
    out_dir: &Path,
) -> Result<ReportFiles> {
    CoreParams::new(params.beta, params.gamma)?;
    let manifest = read_manifest(suite_dir)?;
    let transcripts = read_transcripts(transcripts)?;
    let layer1 = match answers {
        Some(p) => Some((read_qa(suite_dir)?, read_answers(p)?)),
        None => None,
    };
    let scored = score_transcripts(
        &manifest,
        &transcripts,
        layer1.as_ref().map(|(q, a)| (q.as_slice(), a.as_slice())),
        params,
    )?;
    let report = aggregate_report_with(&scored, params, verdict_step)?;
    write_report(out_dir, &report)
}

/// Computes selective metrics for one or more record files, one run per
/// file. `regime` overrides the regime stored in the records.
pub fn cmd_eval(
    records: &[PathBuf],
    regime: Option<Regime>,
    params: &EvalParams,
    out_dir: &Path,
) -> Result<EvalFiles> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut runs = Vec::with_capacity(records.len());
    for path in records {
        let mut recs = read_records(path)?;
        if let Some(regime) = regime {
            for r in &mut recs {
                r.regime = regime;
            }
        }
        let name = path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        runs.push((name, recs));
    }
    write_eval_outputs(out_dir, &runs, params)
}
