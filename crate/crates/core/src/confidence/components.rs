use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::{ConfidenceFlag, EdgeWeight};
use crate::memory::{cosine_similarity, MemoryItem, SourceRegistry};
use crate::{Error, Result};

pub const SECONDS_PER_DAY: f64 = 86_400.0;

/// A value with an optional diagnostic attached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged<T> {
    pub value: T,
    pub flag: Option<ConfidenceFlag>,
}

impl<T> Flagged<T> {
    fn clean(value: T) -> Self {
        Self { value, flag: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalConfig {
    half_life_secs: f64,
    /// Reference time, seconds since the epoch.
    pub now: u64,
}

impl TemporalConfig {
    pub fn new(half_life_secs: f64, now: u64) -> Result<Self> {
        if !(half_life_secs > 0.0 && half_life_secs.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "half-life must be positive, got {half_life_secs}"
            )));
        }
        Ok(Self {
            half_life_secs,
            now,
        })
    }

    pub fn from_days(half_life_days: f64, now: u64) -> Result<Self> {
        Self::new(half_life_days * SECONDS_PER_DAY, now)
    }

    pub fn half_life_secs(&self) -> f64 {
        self.half_life_secs
    }
}

pub fn source_score(item: &MemoryItem, registry: &SourceRegistry) -> f64 {
    registry.prior(&item.source)
}

/// `exp(-ln 2 / T_half · Δt)`.
pub fn decay(delta_secs: f64, half_life_secs: f64) -> f64 {
    (-LN_2 / half_life_secs * delta_secs).exp()
}

/// Temporal freshness of `item` at `cfg.now`. Items stamped after `now` are
/// treated as brand new and flagged.
pub fn temporal_score(item: &MemoryItem, cfg: &TemporalConfig) -> Flagged<f64> {
    if item.timestamp > cfg.now {
        log::warn!(
            "memory {} is stamped {}s in the future; treating it as fresh",
            item.id,
            item.timestamp - cfg.now
        );
        return Flagged {
            value: 1.0,
            flag: Some(ConfidenceFlag::FutureTimestamp),
        };
    }
    Flagged::clean(decay((cfg.now - item.timestamp) as f64, cfg.half_life_secs))
}

/// Support factor σ_ij: positive for agreement, negative for contradiction.
pub fn support_factor(i: &MemoryItem, j: &MemoryItem) -> Result<f64> {
    cosine_similarity(&i.embedding, &j.embedding)
}

pub(crate) fn edge_weight(rule: EdgeWeight, sigma: f64) -> f64 {
    match rule {
        EdgeWeight::Uniform => 1.0,
        EdgeWeight::AbsSimilarity => sigma.abs(),
    }
}

/// Weighted average of neighbour confidence times support.
///
/// An empty neighbourhood (or one whose weights are all zero) yields a neutral
/// 0.0 flagged as lacking consensus evidence.
pub fn network_consensus(
    item: &MemoryItem,
    neighbors: &[(&MemoryItem, f64)],
    rule: EdgeWeight,
) -> Result<Flagged<f64>> {
    let mut num = 0.0;
    let mut den = 0.0;
    for (j, conf) in neighbors {
        let sigma = support_factor(item, j)?;
        let w = edge_weight(rule, sigma);
        num += w * conf * sigma;
        den += w;
    }
    if den <= 0.0 {
        return Ok(Flagged {
            value: 0.0,
            flag: Some(ConfidenceFlag::NoConsensusEvidence),
        });
    }
    Ok(Flagged::clean(num / den))
}
