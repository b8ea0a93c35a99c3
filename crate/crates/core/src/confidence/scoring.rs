use std::io::Write;

use serde::{Deserialize, Serialize};

use super::components::edge_weight;
use super::{
    combined_confidence, source_score, support_factor, temporal_score, Component,
    ConfidenceWeights, TemporalConfig,
};
use crate::memory::{MemoryId, MemoryStore, Retrieved, SourceRegistry};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeWeight {
    /// `w_ij = 1`.
    Uniform,
    /// `w_ij = |σ_ij|`.
    AbsSimilarity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConfidenceFlag {
    FutureTimestamp,
    NoConsensusEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsensusConfig {
    /// Neighbourhood size K_n: the co-retrieved items with the largest |σ|.
    pub neighbors: usize,
    /// Number of consensus passes R. Pass 1 uses (S, T)-only base confidence
    /// for neighbours; later passes feed back the previous combined scores.
    pub passes: usize,
    pub edge_weight: EdgeWeight,
}

impl Default for ConsensusConfig {
    fn default() -> Self {
        Self {
            neighbors: 5,
            passes: 1,
            edge_weight: EdgeWeight::Uniform,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceReport {
    pub id: MemoryId,
    /// Retrieval similarity to the query.
    pub similarity: f64,
    pub source: f64,
    pub time: f64,
    pub consensus: f64,
    /// Whether `consensus` entered the combined score (enabled and at least
    /// one neighbour).
    pub consensus_used: bool,
    /// (S, T)-only base confidence C⁰.
    pub base: f64,
    pub combined: f64,
    pub neighbor_ids: Vec<MemoryId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<ConfidenceFlag>,
}

fn base_confidence(source: f64, time: f64, weights: &ConfidenceWeights) -> f64 {
    let base = weights.without(Component::Consensus);
    // Consensus-only weighting has no (S, T) base; neighbours then count at full weight.
    combined_confidence(source, time, 0.0, &base).unwrap_or(1.0)
}

/// Retrieve the top `k` items for `query` and score each of them.
pub fn score_all(
    store: &MemoryStore,
    query: &[f64],
    k: usize,
    weights: &ConfidenceWeights,
    temporal: &TemporalConfig,
    consensus: &ConsensusConfig,
) -> Result<Vec<ConfidenceReport>> {
    let retrieved = store.retrieve_topk(query, k)?;
    score_retrieved(&retrieved, store.registry(), weights, temporal, consensus)
}

/// Score an already retrieved set; neighbourhoods are drawn from within it.
pub fn score_retrieved(
    retrieved: &[Retrieved<'_>],
    registry: &SourceRegistry,
    weights: &ConfidenceWeights,
    temporal: &TemporalConfig,
    consensus: &ConsensusConfig,
) -> Result<Vec<ConfidenceReport>> {
    if consensus.passes == 0 {
        return Err(Error::InvalidConfig(
            "consensus passes must be at least 1".into(),
        ));
    }
    let n = retrieved.len();
    let mut reports: Vec<ConfidenceReport> = retrieved
        .iter()
        .map(|r| {
            let s = source_score(r.item, registry);
            let t = temporal_score(r.item, temporal);
            ConfidenceReport {
                id: r.item.id.clone(),
                similarity: r.similarity,
                source: s,
                time: t.value,
                consensus: 0.0,
                consensus_used: false,
                base: base_confidence(s, t.value, weights),
                combined: 0.0,
                neighbor_ids: Vec::new(),
                flags: t.flag.into_iter().collect(),
            }
        })
        .collect();

    let mut sigma = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let s = support_factor(retrieved[i].item, retrieved[j].item)?;
            sigma[i][j] = s;
            sigma[j][i] = s;
        }
    }

    let neighborhoods: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            others.sort_by(|&a, &b| {
                sigma[i][b]
                    .abs()
                    .total_cmp(&sigma[i][a].abs())
                    .then_with(|| retrieved[a].item.id.cmp(&retrieved[b].item.id))
            });
            others.truncate(consensus.neighbors);
            others
        })
        .collect();

    let mut current: Vec<f64> = reports.iter().map(|r| r.base).collect();
    for _ in 0..consensus.passes {
        let mut next = Vec::with_capacity(n);
        for (i, report) in reports.iter_mut().enumerate() {
            let (mut num, mut den) = (0.0, 0.0);
            for &j in &neighborhoods[i] {
                let w = edge_weight(consensus.edge_weight, sigma[i][j]);
                num += w * current[j] * sigma[i][j];
                den += w;
            }
            let has_evidence = den > 0.0;
            report.consensus = if has_evidence { num / den } else { 0.0 };
            report.consensus_used =
                has_evidence && weights.enabled().contains(Component::Consensus);
            let effective = if has_evidence {
                *weights
            } else {
                weights.without(Component::Consensus)
            };
            // With consensus as the only component and nothing to agree with,
            // the score falls back to the neutral consensus value.
            report.combined =
                combined_confidence(report.source, report.time, report.consensus, &effective)
                    .or_else(|_| combined_confidence(report.source, report.time, 0.0, weights))?;
            next.push(report.combined);
        }
        current = next;
    }

    for (i, report) in reports.iter_mut().enumerate() {
        report.neighbor_ids = neighborhoods[i]
            .iter()
            .map(|&j| retrieved[j].item.id.clone())
            .collect();
        let has_evidence = neighborhoods[i]
            .iter()
            .any(|&j| edge_weight(consensus.edge_weight, sigma[i][j]) > 0.0);
        if !has_evidence {
            report.flags.push(ConfidenceFlag::NoConsensusEvidence);
        }
    }
    Ok(reports)
}

/// One JSON object per report, tagged with the query it was scored for.
pub fn write_reports_jsonl<W: Write>(
    query_id: &str,
    reports: &[ConfidenceReport],
    mut out: W,
) -> Result<()> {
    #[derive(Serialize)]
    struct Line<'a> {
        query_id: &'a str,
        #[serde(flatten)]
        report: &'a ConfidenceReport,
    }
    for report in reports {
        serde_json::to_writer(&mut out, &Line { query_id, report })?;
        out.write_all(b"\n")
            .map_err(|e| Error::io("<reports>", e))?;
    }
    Ok(())
}
