//! TOML confidence configuration.
//!
//! ```toml
//! mask = "full"            # or "st", "tc", "cs", or ["SOURCE", "TIME"]
//! half_life_days = 30.0
//! tau = 0.5
//! conflict_veto = true
//! neighbors = 5
//! passes = 1
//! edge_weight = "uniform"  # or "abs_similarity"
//!
//! [weights]
//! source = 1.0
//! time = 1.0
//! consensus = 1.0
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    AbstainPolicy, Component, ComponentMask, ConfidenceWeights, ConsensusConfig, EdgeWeight,
    TemporalConfig, Variant,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawWeights {
    pub source: f64,
    pub time: f64,
    pub consensus: f64,
}

impl Default for RawWeights {
    fn default() -> Self {
        Self {
            source: 1.0,
            time: 1.0,
            consensus: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaskSpec {
    Variant(Variant),
    Components(Vec<Component>),
}

impl MaskSpec {
    pub fn mask(&self) -> ComponentMask {
        match self {
            MaskSpec::Variant(v) => v.mask(),
            MaskSpec::Components(cs) => ComponentMask::from_components(cs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfidenceConfig {
    pub weights: RawWeights,
    pub mask: MaskSpec,
    pub half_life_days: f64,
    pub tau: f64,
    pub conflict_veto: bool,
    pub neighbors: usize,
    pub passes: usize,
    pub edge_weight: EdgeWeight,
}

impl Default for ConfidenceConfig {
    fn default() -> Self {
        Self {
            weights: RawWeights::default(),
            mask: MaskSpec::Variant(Variant::Full),
            half_life_days: 30.0,
            tau: 0.5,
            conflict_veto: true,
            neighbors: 5,
            passes: 1,
            edge_weight: EdgeWeight::Uniform,
        }
    }
}

impl ConfidenceConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.mask = MaskSpec::Variant(variant);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.weights()?;
        TemporalConfig::from_days(self.half_life_days, 0)?;
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(Error::InvalidConfig(format!(
                "tau must lie in [0, 1], got {}",
                self.tau
            )));
        }
        if self.passes == 0 {
            return Err(Error::InvalidConfig("passes must be at least 1".into()));
        }
        Ok(())
    }

    pub fn weights(&self) -> Result<ConfidenceWeights> {
        ConfidenceWeights::new(
            self.weights.source,
            self.weights.time,
            self.weights.consensus,
            self.mask.mask(),
        )
    }

    pub fn temporal(&self, now: u64) -> Result<TemporalConfig> {
        TemporalConfig::from_days(self.half_life_days, now)
    }

    pub fn consensus(&self) -> ConsensusConfig {
        ConsensusConfig {
            neighbors: self.neighbors,
            passes: self.passes,
            edge_weight: self.edge_weight,
        }
    }

    pub fn policy(&self) -> AbstainPolicy {
        AbstainPolicy {
            tau: self.tau,
            conflict_veto: self.conflict_veto,
        }
    }
}
