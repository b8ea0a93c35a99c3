use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::metrics::*;
use super::ProbeTranscript;
use crate::bench::{normalize_answer, LogicType, ManifestEntry, Mode, QaItem, Verdict};
use crate::fsutil::{read_jsonl, write_atomic};
use crate::{Error, Result, TOOL_VERSION};

/// An agent's Layer-1 answer. Without a mode it counts for every mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaAnswer {
    pub question_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub answer: String,
}

pub fn read_answers(path: &Path) -> Result<Vec<QaAnswer>> {
    read_jsonl(path, |_| Ok(()))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaTally {
    pub correct: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredCase {
    pub case_id: String,
    pub logic_type: LogicType,
    pub mode: Mode,
    pub gold: Verdict,
    pub step1_verdict: Verdict,
    pub step3_verdict: Verdict,
    pub confessed_error: bool,
    pub core_score: f64,
    pub msa: MsaClass,
    pub wager_entropy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer1: Option<QaTally>,
}

impl ScoredCase {
    fn as_transcript(&self) -> ProbeTranscript {
        ProbeTranscript {
            case_id: self.case_id.clone(),
            mode: self.mode,
            step1_verdict: self.step1_verdict,
            step2_wagers: super::Wagers::all_reserve(),
            step3_verdict: self.step3_verdict,
            confessed_error: self.confessed_error,
            rationale_texts: Vec::new(),
        }
    }
}

/// Joins transcripts with the suite manifest and scores each one. Layer-1
/// answers are graded by normalized exact match when given; unanswered
/// questions count as wrong.
pub fn score_transcripts(
    manifest: &[ManifestEntry],
    transcripts: &[ProbeTranscript],
    layer1: Option<(&[QaItem], &[QaAnswer])>,
    params: &CoreParams,
) -> Result<Vec<ScoredCase>> {
    let by_id: HashMap<&str, &ManifestEntry> =
        manifest.iter().map(|m| (m.case_id.as_str(), m)).collect();
    let answers: HashMap<(&str, Option<Mode>), &str> = layer1
        .map(|(_, a)| {
            a.iter()
                .map(|a| ((a.question_id.as_str(), a.mode), a.answer.as_str()))
                .collect()
        })
        .unwrap_or_default();
    let mut questions: HashMap<&str, Vec<&QaItem>> = HashMap::new();
    if let Some((qs, _)) = layer1 {
        for q in qs {
            questions.entry(q.case_id.as_str()).or_default().push(q);
        }
    }

    transcripts
        .iter()
        .map(|t| {
            let entry = by_id
                .get(t.case_id.as_str())
                .ok_or_else(|| Error::UnknownCase(t.case_id.clone()))?;
            let (s_text, s_vis) = entry.logic_type.signal_vectors();
            let tally = layer1.map(|_| {
                let qs = questions
                    .get(t.case_id.as_str())
                    .map(Vec::as_slice)
                    .unwrap_or_default();
                let correct = qs
                    .iter()
                    .filter(|q| {
                        let id = q.question_id.as_str();
                        answers
                            .get(&(id, Some(t.mode)))
                            .or_else(|| answers.get(&(id, None)))
                            .is_some_and(|a| normalize_answer(a) == normalize_answer(&q.gold))
                    })
                    .count();
                QaTally {
                    correct,
                    total: qs.len(),
                }
            });
            Ok(ScoredCase {
                case_id: t.case_id.clone(),
                logic_type: entry.logic_type,
                mode: t.mode,
                gold: entry.ground_truth,
                step1_verdict: t.step1_verdict,
                step3_verdict: t.step3_verdict,
                confessed_error: t.confessed_error,
                core_score: core_score(t, entry.ground_truth, entry.logic_type, params)?,
                msa: msa_classify(t.step3_verdict, s_text, s_vis),
                wager_entropy: entropy_of_wagers(&t.step2_wagers)?,
                layer1: tally,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsaCounts {
    pub text_dominant: usize,
    pub vision_dominant: usize,
    pub confusion: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeBreakdown {
    pub logic_type: LogicType,
    pub n: usize,
    pub verdict_correct: usize,
    pub verdict_acc: Option<f64>,
    pub core_score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeReport {
    pub mode: Mode,
    pub n_cases: usize,
    /// Layer-1 QA accuracy; `None` when no answers were graded.
    pub core_acc: Option<f64>,
    /// Final verdict equals gold; UNKNOWN is correct on C/D.
    pub verdict_acc: Option<f64>,
    pub core_score: Option<f64>,
    pub type_b_acc: Option<f64>,
    pub type_d_score: Option<f64>,
    pub by_type: Vec<TypeBreakdown>,
    pub msa: MsaCounts,
    pub scr: Option<f64>,
    pub fcr: Option<f64>,
    pub logic_collapse: usize,
    pub mean_wager_entropy: Option<f64>,
}

/// Which probe verdict the accuracy columns grade.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStep {
    Step1,
    #[default]
    Step3,
}

impl std::str::FromStr for VerdictStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "step1" | "1" => Ok(VerdictStep::Step1),
            "step3" | "3" => Ok(VerdictStep::Step3),
            other => Err(Error::InvalidConfig(format!(
                "unknown verdict step `{other}` (expected step1 or step3)"
            ))),
        }
    }
}

impl ScoredCase {
    pub fn verdict(&self, step: VerdictStep) -> Verdict {
        match step {
            VerdictStep::Step1 => self.step1_verdict,
            VerdictStep::Step3 => self.step3_verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub tool_version: String,
    pub params: CoreParams,
    /// Which verdict the accuracy columns use.
    pub verdict_step: VerdictStep,
    /// Distribution behind H_text and H_vis.
    pub entropy_source: String,
    pub n_cases: usize,
    pub modes: Vec<ModeReport>,
    /// Needs both modes.
    pub delta_h_rel: Option<RelativeUncertainty>,
    pub cases: Vec<ScoredCase>,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (n, s) = xs.fold((0usize, 0.0), |(n, s), x| (n + 1, s + x));
    (n > 0).then(|| s / n as f64)
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

fn mode_report(mode: Mode, cases: &[&ScoredCase], step: VerdictStep) -> Result<ModeReport> {
    let correct = |c: &ScoredCase| c.verdict(step) == c.gold;
    let by_type: Vec<TypeBreakdown> = LogicType::ALL
        .iter()
        .map(|&lt| {
            let of: Vec<&&ScoredCase> = cases.iter().filter(|c| c.logic_type == lt).collect();
            let verdict_correct = of.iter().filter(|c| correct(c)).count();
            TypeBreakdown {
                logic_type: lt,
                n: of.len(),
                verdict_correct,
                verdict_acc: ratio(verdict_correct, of.len()),
                core_score: mean(of.iter().map(|c| c.core_score)),
            }
        })
        .collect();
    let tallies: Vec<QaTally> = cases.iter().filter_map(|c| c.layer1).collect();
    let qa_total: usize = tallies.iter().map(|t| t.total).sum();
    let qa_correct: usize = tallies.iter().map(|t| t.correct).sum();
    let mut msa = MsaCounts::default();
    for c in cases {
        match c.msa {
            MsaClass::TextDominant => msa.text_dominant += 1,
            MsaClass::VisionDominant => msa.vision_dominant += 1,
            MsaClass::Confusion => msa.confusion += 1,
        }
    }
    let transcripts: Vec<ProbeTranscript> = cases.iter().map(|c| c.as_transcript()).collect();
    let golds: Vec<Verdict> = cases.iter().map(|c| c.gold).collect();
    let of_type = |lt: LogicType| by_type.iter().find(|b| b.logic_type == lt).unwrap();
    Ok(ModeReport {
        mode,
        n_cases: cases.len(),
        core_acc: ratio(qa_correct, qa_total),
        verdict_acc: ratio(cases.iter().filter(|c| correct(c)).count(), cases.len()),
        core_score: mean(cases.iter().map(|c| c.core_score)),
        type_b_acc: of_type(LogicType::BInversion).verdict_acc,
        type_d_score: of_type(LogicType::DUnknowable).core_score,
        by_type,
        msa,
        scr: scr(&transcripts, &golds)?,
        fcr: fcr(&transcripts, &golds)?,
        logic_collapse: logic_collapse_count(&transcripts, &golds)?,
        mean_wager_entropy: mean(cases.iter().map(|c| c.wager_entropy)),
    })
}

/// Per-mode aggregates grading the final (step-3) verdict.
pub fn aggregate_report(scored: &[ScoredCase], params: &CoreParams) -> Result<ProbeReport> {
    aggregate_report_with(scored, params, VerdictStep::Step3)
}

pub fn aggregate_report_with(
    scored: &[ScoredCase],
    params: &CoreParams,
    step: VerdictStep,
) -> Result<ProbeReport> {
    let mut per_mode: BTreeMap<Mode, Vec<&ScoredCase>> = BTreeMap::new();
    for c in scored {
        per_mode.entry(c.mode).or_default().push(c);
    }
    let modes = per_mode
        .iter()
        .map(|(m, cs)| mode_report(*m, cs, step))
        .collect::<Result<Vec<_>>>()?;
    let entropy = |m: Mode| {
        modes
            .iter()
            .find(|r| r.mode == m)
            .and_then(|r| r.mean_wager_entropy)
    };
    let delta_h_rel = match (entropy(Mode::Text), entropy(Mode::Vision)) {
        (Some(t), Some(v)) => Some(relative_uncertainty(t, v)?),
        _ => None,
    };
    Ok(ProbeReport {
        tool_version: TOOL_VERSION.to_owned(),
        params: *params,
        verdict_step: step,
        entropy_source: "mean wager entropy (nats) per mode".into(),
        n_cases: scored.len(),
        modes,
        delta_h_rel,
        cases: scored.to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportFiles {
    pub json: PathBuf,
    pub csv: PathBuf,
    pub cases_csv: PathBuf,
}

#[derive(Serialize)]
struct SummaryRow {
    mode: Mode,
    n_cases: usize,
    core_acc: Option<f64>,
    verdict_acc: Option<f64>,
    core_score: Option<f64>,
    type_b_acc: Option<f64>,
    type_d_score: Option<f64>,
    text_dominant: usize,
    vision_dominant: usize,
    confusion: usize,
    scr: Option<f64>,
    fcr: Option<f64>,
    logic_collapse: usize,
    mean_wager_entropy: Option<f64>,
    delta_h_rel: Option<f64>,
    beta: f64,
    gamma: f64,
}

#[derive(Serialize)]
struct CaseRow<'a> {
    case_id: &'a str,
    logic_type: char,
    mode: Mode,
    gold: Verdict,
    step1_verdict: Verdict,
    step3_verdict: Verdict,
    confessed_error: bool,
    core_score: f64,
    msa: MsaClass,
    wager_entropy: f64,
}

/// Writes `report.json`, a per-mode `report.csv` and a per-case `cases.csv`.
pub fn write_report(dir: &Path, report: &ProbeReport) -> Result<ReportFiles> {
    let files = ReportFiles {
        json: dir.join("report.json"),
        csv: dir.join("report.csv"),
        cases_csv: dir.join("cases.csv"),
    };
    let mut json = serde_json::to_vec_pretty(report)?;
    json.push(b'\n');
    write_atomic(&files.json, &json)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    for m in &report.modes {
        w.serialize(SummaryRow {
            mode: m.mode,
            n_cases: m.n_cases,
            core_acc: m.core_acc,
            verdict_acc: m.verdict_acc,
            core_score: m.core_score,
            type_b_acc: m.type_b_acc,
            type_d_score: m.type_d_score,
            text_dominant: m.msa.text_dominant,
            vision_dominant: m.msa.vision_dominant,
            confusion: m.msa.confusion,
            scr: m.scr,
            fcr: m.fcr,
            logic_collapse: m.logic_collapse,
            mean_wager_entropy: m.mean_wager_entropy,
            delta_h_rel: report.delta_h_rel.map(|d| d.value),
            beta: report.params.beta,
            gamma: report.params.gamma,
        })?;
    }
    write_atomic(&files.csv, &report_csv_bytes(w)?)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    for c in &report.cases {
        w.serialize(CaseRow {
            case_id: &c.case_id,
            logic_type: c.logic_type.letter(),
            mode: c.mode,
            gold: c.gold,
            step1_verdict: c.step1_verdict,
            step3_verdict: c.step3_verdict,
            confessed_error: c.confessed_error,
            core_score: c.core_score,
            msa: c.msa,
            wager_entropy: c.wager_entropy,
        })?;
    }
    write_atomic(&files.cases_csv, &report_csv_bytes(w)?)?;
    Ok(files)
}

pub(crate) fn report_csv_bytes(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner()
        .map_err(|e| Error::Csv(e.into_error().into()))
}
