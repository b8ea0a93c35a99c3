use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::{BenchCase, Mode, Verdict};
use crate::confidence::{ConfidenceConfig, Variant, SECONDS_PER_DAY};
use crate::probe::Wagers;
use crate::{Error, Result};

/// Maps the top confidence of a decision to a 100-point wager.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WagerPolicy {
    /// `reserve = round(100·(1 − confidence))`, the rest on the verdict;
    /// an abstention reserves everything.
    #[default]
    Linear,
}

impl WagerPolicy {
    pub fn allocate(self, verdict: Verdict, confidence: Option<f64>) -> Wagers {
        match (self, confidence) {
            (WagerPolicy::Linear, Some(c)) if verdict != Verdict::Unknown => {
                let reserve = (100.0 * (1.0 - c.clamp(0.0, 1.0))).round() as u32;
                Wagers::split(verdict, reserve)
            }
            _ => Wagers::all_reserve(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AgentConfig {
    pub confidence: ConfidenceConfig,
    /// Retrieval depth for the probe query.
    pub k: usize,
    /// Buckets of the hashed bag-of-tokens part of the embedding.
    pub dimension: usize,
    /// Length of the stance axis relative to the unit-norm token bag.
    pub stance_weight: f64,
    /// Days between the last session and the probe question.
    pub probe_delay_days: f64,
    /// Laplace pseudo-count for learning source priors from calibration.
    pub smoothing: f64,
    pub wager_policy: WagerPolicy,
    pub mode: Mode,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            confidence: ConfidenceConfig::default(),
            k: 10,
            dimension: 256,
            stance_weight: 1.0,
            probe_delay_days: 14.0,
            smoothing: 1.0,
            wager_policy: WagerPolicy::Linear,
            mode: Mode::Text,
        }
    }
}

impl AgentConfig {
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
        self.confidence = self.confidence.with_variant(variant);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Reference time for temporal decay when probing `case`.
    pub fn probe_now(&self, case: &BenchCase) -> u64 {
        case.probe_time() + (self.probe_delay_days * SECONDS_PER_DAY).round() as u64
    }

    pub fn validate(&self) -> Result<()> {
        self.confidence.validate()?;
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if !(self.stance_weight >= 0.0 && self.stance_weight.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "stance_weight must be nonnegative, got {}",
                self.stance_weight
            )));
        }
        if !(self.probe_delay_days >= 0.0 && self.probe_delay_days.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "probe_delay_days must be nonnegative, got {}",
                self.probe_delay_days
            )));
        }
        if !(self.smoothing >= 0.0 && self.smoothing.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "smoothing must be nonnegative, got {}",
                self.smoothing
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_wagers() {
        let p = WagerPolicy::Linear;
        assert_eq!(
            p.allocate(Verdict::True, Some(0.71)),
            Wagers {
                on_true: 71,
                reserve: 29,
                ..Default::default()
            }
        );
        assert_eq!(
            p.allocate(Verdict::Unknown, Some(0.9)),
            Wagers::all_reserve()
        );
        assert_eq!(p.allocate(Verdict::False, None), Wagers::all_reserve());
        for c in 0..=1000 {
            assert_eq!(
                p.allocate(Verdict::False, Some(c as f64 / 1000.0)).total(),
                100
            );
        }
    }

    #[test]
    fn toml_round_trip() {
        let cfg = AgentConfig::from_toml("k = 8\nmode = \"VISION\"\n[confidence]\nmask = \"tc\"\n")
            .unwrap();
        assert_eq!(cfg.k, 8);
        assert_eq!(cfg.mode, Mode::Vision);
        assert_eq!(
            cfg.confidence,
            ConfidenceConfig::default().with_variant(Variant::Tc)
        );
        assert!(AgentConfig::from_toml("k = 0").is_err());
        assert!(AgentConfig::from_toml("bogus = 1").is_err());
    }
}
