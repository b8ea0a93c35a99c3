use serde::{Deserialize, Serialize};

use super::{EvalRecord, Regime};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectiveSummary {
    pub regime: Regime,
    pub n: f64,
    pub n_answered_correct: f64,
    pub n_answered_wrong: f64,
    /// Abstentions on NEI / unanswerable gold.
    pub n_correct_abstain: f64,
    pub n_wrong_abstain: f64,
    pub raw_acc: f64,
    /// Precision of non-abstained answers; `None` when nothing was answered.
    pub actionable_acc: Option<f64>,
    pub abstain_rate: f64,
    pub abstain_precision: Option<f64>,
}

impl SelectiveSummary {
    /// Builds a summary from (possibly seed-averaged) counts.
    pub fn from_counts(
        regime: Regime,
        answered_correct: f64,
        answered_wrong: f64,
        correct_abstain: f64,
        wrong_abstain: f64,
    ) -> Result<Self> {
        let counts = [
            answered_correct,
            answered_wrong,
            correct_abstain,
            wrong_abstain,
        ];
        if counts.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::InvalidConfig(format!(
                "counts must be nonnegative, got {counts:?}"
            )));
        }
        let n: f64 = counts.iter().sum();
        if n <= 0.0 {
            return Err(Error::EmptyRecords);
        }
        let answered = answered_correct + answered_wrong;
        let abstained = correct_abstain + wrong_abstain;
        let raw_correct = match regime {
            Regime::LabelAbstain => answered_correct + correct_abstain,
            Regime::Coverage => answered_correct,
        };
        Ok(Self {
            regime,
            n,
            n_answered_correct: answered_correct,
            n_answered_wrong: answered_wrong,
            n_correct_abstain: correct_abstain,
            n_wrong_abstain: wrong_abstain,
            raw_acc: raw_correct / n,
            actionable_acc: (answered > 0.0).then(|| answered_correct / answered),
            abstain_rate: abstained / n,
            abstain_precision: (abstained > 0.0).then(|| correct_abstain / abstained),
        })
    }

    pub fn n_abstain(&self) -> f64 {
        self.n_correct_abstain + self.n_wrong_abstain
    }
}

/// Raw accuracy plus partial credit `α` for each wrong abstention.
pub fn selective_score(s: &SelectiveSummary, alpha: f64) -> Result<f64> {
    if s.regime != Regime::LabelAbstain {
        return Err(Error::InvalidConfig(
            "selective score needs a LABEL_ABSTAIN summary".into(),
        ));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidConfig(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok((s.n_answered_correct + s.n_correct_abstain + alpha * s.n_wrong_abstain) / s.n)
}

pub fn alpha_sweep(s: &SelectiveSummary, alphas: &[f64]) -> Result<Vec<(f64, f64)>> {
    alphas
        .iter()
        .map(|&a| Ok((a, selective_score(s, a)?)))
        .collect()
}

/// `answered_correct − λ·answered_wrong + r·abstain`.
pub fn utility(s: &SelectiveSummary, lambda: f64, r: f64) -> Result<f64> {
    if !(lambda >= 0.0 && r >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "lambda and r must be nonnegative, got {lambda} and {r}"
        )));
    }
    Ok(s.n_answered_correct - lambda * s.n_answered_wrong + r * s.n_abstain())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskCoveragePoint {
    /// Confidence cut-off; `None` for the unswept operating point.
    pub threshold: Option<f64>,
    pub answered: usize,
    pub coverage: f64,
    /// Wrong fraction of answered; `None` when nothing is answered.
    pub risk: Option<f64>,
}

/// The operating point, or a threshold sweep when every answered record
/// carries a confidence. Thresholds are the distinct answered confidences in
/// ascending order; a record is kept when its confidence is at least the
/// threshold.
pub fn risk_coverage(records: &[EvalRecord]) -> Vec<RiskCoveragePoint> {
    let n = records.len();
    let answered: Vec<(Option<f64>, bool)> = records
        .iter()
        .filter_map(|r| r.is_answered_correct().map(|ok| (r.confidence, ok)))
        .collect();
    let point = |threshold, kept: &[(Option<f64>, bool)]| {
        let wrong = kept.iter().filter(|(_, ok)| !ok).count();
        RiskCoveragePoint {
            threshold,
            answered: kept.len(),
            coverage: if n == 0 {
                0.0
            } else {
                kept.len() as f64 / n as f64
            },
            risk: (!kept.is_empty()).then(|| wrong as f64 / kept.len() as f64),
        }
    };
    if answered.is_empty() || answered.iter().any(|(c, _)| c.is_none()) {
        return vec![point(None, &answered)];
    }
    let mut thresholds: Vec<f64> = answered.iter().filter_map(|(c, _)| *c).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    thresholds
        .into_iter()
        .map(|t| {
            let kept: Vec<_> = answered
                .iter()
                .copied()
                .filter(|(c, _)| c.is_some_and(|c| c >= t))
                .collect();
            point(Some(t), &kept)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StdConvention {
    /// `n − 1` denominator.
    #[default]
    Sample,
    /// `n` denominator.
    Population,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stability {
    pub mean: f64,
    pub std: f64,
    pub convention: StdConvention,
}

pub fn stability(values: &[f64]) -> Result<Stability> {
    stability_with(values, StdConvention::Sample)
}

pub fn stability_with(values: &[f64], convention: StdConvention) -> Result<Stability> {
    if values.len() < 2 {
        return Err(Error::TooFewSeeds(values.len()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    let den = match convention {
        StdConvention::Sample => n - 1.0,
        StdConvention::Population => n,
    };
    Ok(Stability {
        mean,
        std: (ss / den).sqrt(),
        convention,
    })
}
