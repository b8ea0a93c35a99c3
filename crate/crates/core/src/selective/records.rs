use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SelectiveSummary;
use crate::bench::normalize_answer;
use crate::fsutil::read_jsonl;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    LabelAbstain,
    Coverage,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::LabelAbstain => "LABEL_ABSTAIN",
            Regime::Coverage => "COVERAGE",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "label_abstain" | "label" => Ok(Regime::LabelAbstain),
            "coverage" => Ok(Regime::Coverage),
            other => Err(Error::InvalidConfig(format!(
                "unknown regime `{other}` (expected label_abstain or coverage)"
            ))),
        }
    }
}

/// `{"answer": "SUPPORTS"}` or `"abstain"` on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Answer(String),
    Abstain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub question_id: String,
    /// Gold label; NEI or UNANSWERABLE marks questions without an answer.
    pub gold: String,
    pub prediction: Prediction,
    pub regime: Regime,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
}

impl EvalRecord {
    pub fn is_answered_correct(&self) -> Option<bool> {
        match &self.prediction {
            Prediction::Answer(a) => Some(normalize_answer(a) == normalize_answer(&self.gold)),
            Prediction::Abstain => None,
        }
    }
}

pub fn is_abstain_label(gold: &str) -> bool {
    matches!(
        normalize_answer(gold).as_str(),
        "nei" | "not enough info" | "not enough information" | "unanswerable"
    )
}

pub fn read_records(path: &Path) -> Result<Vec<EvalRecord>> {
    read_jsonl(path, |r: &EvalRecord| match r.confidence {
        Some(c) if !(0.0..=1.0).contains(&c) => Err(Error::InvalidConfig(format!(
            "confidence {c} outside [0, 1]"
        ))),
        _ => Ok(()),
    })
}

/// Counts outcomes. All records must share one regime.
pub fn summarize(records: &[EvalRecord]) -> Result<SelectiveSummary> {
    let first = records.first().ok_or(Error::EmptyRecords)?;
    let regime = first.regime;
    if let Some(other) = records.iter().find(|r| r.regime != regime) {
        return Err(Error::InvalidConfig(format!(
            "mixed regimes: `{}` is {} but `{}` is {}",
            first.question_id, regime, other.question_id, other.regime
        )));
    }
    let (mut ac, mut aw, mut ca, mut wa) = (0.0, 0.0, 0.0, 0.0);
    for r in records {
        match r.is_answered_correct() {
            Some(true) => ac += 1.0,
            Some(false) => aw += 1.0,
            None if is_abstain_label(&r.gold) => ca += 1.0,
            None => wa += 1.0,
        }
    }
    SelectiveSummary::from_counts(regime, ac, aw, ca, wa)
}
