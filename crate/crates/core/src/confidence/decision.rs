use serde::{Deserialize, Serialize};

use super::ConfidenceReport;
use crate::memory::MemoryId;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbstainPolicy {
    pub tau: f64,
    pub conflict_veto: bool,
}

impl Default for AbstainPolicy {
    fn default() -> Self {
        Self {
            tau: 0.5,
            conflict_veto: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AbstainReason {
    NoEvidence,
    BelowThreshold,
    Conflict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    Answer { item: MemoryId, combined: f64 },
    Abstain { reasons: Vec<AbstainReason> },
}

impl Decision {
    pub fn is_abstain(&self) -> bool {
        matches!(self, Decision::Abstain { .. })
    }
}

/// Combined confidence descending, then retrieval similarity descending, then id.
pub fn rerank(reports: &[ConfidenceReport]) -> Vec<ConfidenceReport> {
    let mut out = reports.to_vec();
    out.sort_by(|a, b| {
        b.combined
            .total_cmp(&a.combined)
            .then_with(|| b.similarity.total_cmp(&a.similarity))
            .then_with(|| a.id.cmp(&b.id))
    });
    out
}

pub fn abstain_decision(reports: &[ConfidenceReport], policy: &AbstainPolicy) -> Decision {
    let Some(top) = rerank(reports).into_iter().next() else {
        return Decision::Abstain {
            reasons: vec![AbstainReason::NoEvidence],
        };
    };
    let mut reasons = Vec::new();
    if top.combined < policy.tau {
        reasons.push(AbstainReason::BelowThreshold);
    }
    if policy.conflict_veto && top.consensus_used && top.consensus < 0.0 {
        reasons.push(AbstainReason::Conflict);
    }
    if reasons.is_empty() {
        Decision::Answer {
            item: top.id,
            combined: top.combined,
        }
    } else {
        Decision::Abstain { reasons }
    }
}
