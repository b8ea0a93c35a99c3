use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::*;
use crate::fsutil::write_atomic;
use crate::probe::report_csv_bytes;
use crate::{Result, TOOL_VERSION};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    pub alphas: Vec<f64>,
    pub lambda: f64,
    pub r: f64,
    pub std_convention: StdConvention,
}

impl Default for EvalParams {
    fn default() -> Self {
        Self {
            alphas: vec![0.2],
            lambda: 1.0,
            r: 0.2,
            std_convention: StdConvention::Sample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalFiles {
    pub summary_json: PathBuf,
    pub summary_csv: PathBuf,
    pub alpha_sweep_csv: PathBuf,
    pub risk_coverage_csv: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
struct RunSummary<'a> {
    run: &'a str,
    summary: SelectiveSummary,
    selective: Vec<(f64, f64)>,
    utility: f64,
}

#[derive(Serialize)]
struct EvalJson<'a> {
    tool_version: &'static str,
    params: &'a EvalParams,
    runs: Vec<RunSummary<'a>>,
    /// Mean and spread of raw accuracy (percent) across runs.
    stability: Option<Stability>,
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    run: &'a str,
    regime: Regime,
    n: f64,
    raw_acc: f64,
    selective: Option<f64>,
    alpha: Option<f64>,
    abstain_rate: f64,
    abstain_precision: Option<f64>,
    actionable_acc: Option<f64>,
    correct_abstain: f64,
    wrong_abstain: f64,
    wrong_answers: f64,
    abstain_count: f64,
    utility: f64,
    lambda: f64,
    r: f64,
}

#[derive(Serialize)]
struct SweepRow<'a> {
    run: &'a str,
    alpha: f64,
    selective: f64,
}

#[derive(Serialize)]
struct RcRow<'a> {
    run: &'a str,
    threshold: Option<f64>,
    answered: usize,
    coverage: f64,
    risk: Option<f64>,
}

/// Writes `summary.json`, `summary.csv`, `alpha_sweep.csv` and
/// `risk_coverage.csv` for one or more runs (typically one per seed).
pub fn write_eval_outputs(
    dir: &Path,
    runs: &[(String, Vec<EvalRecord>)],
    params: &EvalParams,
) -> Result<EvalFiles> {
    let files = EvalFiles {
        summary_json: dir.join("summary.json"),
        summary_csv: dir.join("summary.csv"),
        alpha_sweep_csv: dir.join("alpha_sweep.csv"),
        risk_coverage_csv: dir.join("risk_coverage.csv"),
    };
    let mut summaries = Vec::with_capacity(runs.len());
    let mut summary_csv = csv::Writer::from_writer(Vec::new());
    let mut sweep_csv = csv::Writer::from_writer(Vec::new());
    let mut rc_csv = csv::Writer::from_writer(Vec::new());
    for (name, records) in runs {
        let s = summarize(records)?;
        let sweep = match s.regime {
            Regime::LabelAbstain => alpha_sweep(&s, &params.alphas)?,
            Regime::Coverage => Vec::new(),
        };
        let u = utility(&s, params.lambda, params.r)?;
        let first = sweep.first().copied();
        summary_csv.serialize(SummaryRow {
            run: name,
            regime: s.regime,
            n: s.n,
            raw_acc: s.raw_acc,
            selective: first.map(|(_, v)| v),
            alpha: first.map(|(a, _)| a),
            abstain_rate: s.abstain_rate,
            abstain_precision: s.abstain_precision,
            actionable_acc: s.actionable_acc,
            correct_abstain: s.n_correct_abstain,
            wrong_abstain: s.n_wrong_abstain,
            wrong_answers: s.n_answered_wrong,
            abstain_count: s.n_abstain(),
            utility: u,
            lambda: params.lambda,
            r: params.r,
        })?;
        for &(alpha, selective) in &sweep {
            sweep_csv.serialize(SweepRow {
                run: name,
                alpha,
                selective,
            })?;
        }
        for p in risk_coverage(records) {
            rc_csv.serialize(RcRow {
                run: name,
                threshold: p.threshold,
                answered: p.answered,
                coverage: p.coverage,
                risk: p.risk,
            })?;
        }
        summaries.push(RunSummary {
            run: name,
            summary: s,
            selective: sweep,
            utility: u,
        });
    }
    let accs: Vec<f64> = summaries
        .iter()
        .map(|r| r.summary.raw_acc * 100.0)
        .collect();
    let stability = (accs.len() >= 2)
        .then(|| stability_with(&accs, params.std_convention))
        .transpose()?;
    let json = EvalJson {
        tool_version: TOOL_VERSION,
        params,
        runs: summaries,
        stability,
    };
    let mut bytes = serde_json::to_vec_pretty(&json)?;
    bytes.push(b'\n');
    write_atomic(&files.summary_json, &bytes)?;
    write_atomic(&files.summary_csv, &report_csv_bytes(summary_csv)?)?;
    write_atomic(&files.alpha_sweep_csv, &report_csv_bytes(sweep_csv)?)?;
    write_atomic(&files.risk_coverage_csv, &report_csv_bytes(rc_csv)?)?;
    Ok(files)
}
