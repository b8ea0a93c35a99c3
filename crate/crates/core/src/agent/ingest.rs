use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AgentConfig, StanceEmbedder};
use crate::bench::templates::{parse_outcome, parse_prediction};
use crate::bench::{BenchCase, Mode, Phase, Speaker};
use crate::memory::{Embedder, MemoryItem, MemoryStore, Modality, SourceRegistry};
use crate::Result;

/// Source id of evidence records; it is never calibrated.
pub const EVIDENCE_SOURCE: &str = "EVIDENCE";

/// Revealed calibration outcomes per speaker.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Calibration {
    pub hits: usize,
    pub total: usize,
}

/// Pairs each revealed outcome with the latest earlier prediction of the
/// same event in its session.
pub fn calibration_tally(case: &BenchCase) -> BTreeMap<Speaker, Calibration> {
    let mut out: BTreeMap<Speaker, Calibration> = BTreeMap::new();
    for s in case
        .sessions
        .iter()
        .filter(|s| s.phase == Phase::Calibration)
    {
        let mut open: Vec<(String, Speaker)> = Vec::new();
        for u in &s.utterances {
            if u.speaker != Speaker::System {
                if let Some(event) = parse_prediction(&u.text) {
                    open.push((event, u.speaker));
                }
                continue;
            }
            let Some((came_true, event)) = parse_outcome(&u.text) else {
                continue;
            };
            if let Some(pos) = open.iter().rposition(|(e, _)| *e == event) {
                let (_, who) = open.remove(pos);
                let c = out.entry(who).or_default();
                c.total += 1;
                c.hits += usize::from(came_true);
            }
        }
    }
    out
}

/// Laplace-smoothed reliability `(hits + s)/(total + 2s)` per speaker.
pub fn learn_priors(case: &BenchCase, smoothing: f64) -> Result<SourceRegistry> {
    let mut reg = SourceRegistry::default();
    for (who, c) in calibration_tally(case) {
        let den = c.total as f64 + 2.0 * smoothing;
        if den > 0.0 {
            reg.set(who.source_id(), (c.hits as f64 + smoothing) / den)?;
        }
    }
    Ok(reg)
}

pub fn case_embedder(case: &BenchCase, cfg: &AgentConfig) -> Result<StanceEmbedder> {
    StanceEmbedder::new(cfg.dimension, cfg.stance_weight, &case.target_fact)
}

/// One memory item per utterance and per evidence record. Evidence is
/// rendered for `mode` and tagged as a vision caption in VISION mode.
pub fn ingest_case(case: &BenchCase, mode: Mode, cfg: &AgentConfig) -> Result<MemoryStore> {
    let embedder = case_embedder(case, cfg)?;
    let mut store = MemoryStore::new(embedder.dimension(), learn_priors(case, cfg.smoothing)?)?;
    for r in case.render(mode) {
        let (source, modality) = if r.is_evidence {
            let modality = match mode {
                Mode::Text => Modality::Text,
                Mode::Vision => Modality::VisionCaption,
            };
            (EVIDENCE_SOURCE.to_owned(), modality)
        } else {
            (r.speaker.source_id().to_owned(), Modality::Text)
        };
        store.insert(MemoryItem {
            id: r.id.as_str().into(),
            embedding: embedder.embed(&r.text)?,
            content: r.text,
            source,
            timestamp: r.timestamp,
            modality,
        })?;
    }
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_case, BenchConfig, LogicType};

    #[test]
    fn perfect_record_prior() {
        let cfg = BenchConfig {
            reliability_a: 1.0,
            reliability_b: 0.25,
            ..Default::default()
        };
        let case = generate_case(3, LogicType::AStandard, &cfg).unwrap();
        let tally = calibration_tally(&case);
        assert_eq!(tally[&Speaker::UserA], Calibration { hits: 4, total: 4 });
        let reg = learn_priors(&case, 1.0).unwrap();
        assert!((reg.prior("USER_A") - 5.0 / 6.0).abs() < 1e-12);
        assert!((reg.prior("USER_B") - 2.0 / 6.0).abs() < 1e-12);
        assert_eq!(reg.prior("SYSTEM"), 0.5);
    }

    #[test]
    fn tally_matches_plan() {
        let case = generate_case(8, LogicType::BInversion, &BenchConfig::default()).unwrap();
        let tally = calibration_tally(&case);
        for who in [Speaker::UserA, Speaker::UserB] {
            let planned: Vec<bool> = case
                .sessions
                .iter()
                .flat_map(|s| &s.utterances)
                .filter(|u| u.speaker == who)
                .filter_map(|u| u.verifiable_outcome)
                .collect();
            assert_eq!(tally[&who].total, planned.len());
            assert_eq!(tally[&who].hits, planned.iter().filter(|o| **o).count());
        }
    }

    #[test]
    fn modes_differ_only_in_evidence() {
        let case = generate_case(4, LogicType::CAmbiguity, &BenchConfig::default()).unwrap();
        let cfg = AgentConfig::default();
        let text = ingest_case(&case, Mode::Text, &cfg).unwrap();
        let vision = ingest_case(&case, Mode::Vision, &cfg).unwrap();
        assert_eq!(text.len(), vision.len());
        assert!(text.len() >= 10);
        for (a, b) in text.items().iter().zip(vision.items()) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.timestamp, b.timestamp);
            if a.source == EVIDENCE_SOURCE {
                assert_ne!(a.content, b.content);
                assert_eq!(b.modality, Modality::VisionCaption);
            } else {
                assert_eq!(a.content, b.content);
            }
        }
        let ts: Vec<u64> = text.items().iter().map(|i| i.timestamp).collect();
        assert!(ts.windows(2).all(|w| w[0] <= w[1]));
    }
}
