use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::templates::{self as tpl, fill};
use super::types::*;
use crate::{Error, Result};

/// Days spanned from the first to the last session.
const SPAN_DAYS: u64 = 180;
const SECONDS_PER_DAY: u64 = 86_400;

/// Day offset of 1-based session `index`: ⌊180·(i−1)/9⌋.
pub fn session_day(index: usize) -> u64 {
    SPAN_DAYS * (index as u64 - 1) / (SESSION_COUNT as u64 - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    /// Fraction of User A's calibration predictions that come true.
    pub reliability_a: f64,
    /// Fraction of User B's calibration predictions that come true.
    pub reliability_b: f64,
    /// Verifiable predictions per user across sessions 1–4.
    pub calibration_events: usize,
    /// Distractor utterances across sessions 5–7.
    pub noise_utterances: usize,
    /// Near-duplicate entities per case.
    pub distractors: usize,
    /// Timestamp of session 1, seconds since the Unix epoch.
    pub epoch: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            reliability_a: 0.9,
            reliability_b: 0.3,
            calibration_events: 4,
            noise_utterances: 20,
            distractors: 4,
            // 2024-01-01T00:00:00Z
            epoch: 1_704_067_200,
        }
    }
}

impl BenchConfig {
    fn true_count(reliability: f64, n: usize) -> usize {
        ((reliability * n as f64).round() as usize).min(n)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        for (name, r) in [
            ("reliability_a", self.reliability_a),
            ("reliability_b", self.reliability_b),
        ] {
            if !(0.0..=1.0).contains(&r) {
                return bad(format!("{name} must lie in [0, 1], got {r}"));
            }
        }
        if self.calibration_events == 0 {
            return bad("calibration_events must be at least 1".into());
        }
        if Self::true_count(self.reliability_a, self.calibration_events)
            <= Self::true_count(self.reliability_b, self.calibration_events)
        {
            return bad(format!(
                "with {} calibration events, reliabilities {} and {} do not make User A more reliable than User B",
                self.calibration_events, self.reliability_a, self.reliability_b
            ));
        }
        if self.calibration_events * 2 > tpl::EVENTS.len() {
            return bad(format!(
                "at most {} calibration events per user",
                tpl::EVENTS.len() / 2
            ));
        }
        if self.distractors == 0
            || self.distractors > 2 * (tpl::OWNERS.len().min(tpl::OBJECTS.len()) - 1)
        {
            return bad(format!(
                "distractors must be between 1 and 18, got {}",
                self.distractors
            ));
        }
        if self.noise_utterances < self.distractors {
            return bad(format!(
                "noise_utterances ({}) must cover one claim per distractor ({})",
                self.noise_utterances, self.distractors
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl TypeCounts {
    pub fn get(&self, t: LogicType) -> usize {
        match t {
            LogicType::AStandard => self.a,
            LogicType::BInversion => self.b,
            LogicType::CAmbiguity => self.c,
            LogicType::DUnknowable => self.d,
        }
    }

    pub fn total(&self) -> usize {
        self.a + self.b + self.c + self.d
    }
}

impl fmt::Display for TypeCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A:{},B:{},C:{},D:{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses `A:1,B:17` style lists; omitted types count zero.
impl FromStr for TypeCounts {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut counts = TypeCounts::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (t, n) = part.split_once(':').ok_or_else(|| {
                Error::InvalidConfig(format!("expected TYPE:COUNT, got `{part}`"))
            })?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad count in `{part}`")))?;
            match t.parse::<LogicType>()? {
                LogicType::AStandard => counts.a = n,
                LogicType::BInversion => counts.b = n,
                LogicType::CAmbiguity => counts.c = n,
                LogicType::DUnknowable => counts.d = n,
            }
        }
        Ok(counts)
    }
}

/// Per-case seeds for one logic type: the first `count` outputs of ChaCha8
/// seeded with `suite_seed` on stream `type index` (A = 0 … D = 3).
pub fn derive_case_seeds(suite_seed: u64, logic_type: LogicType, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed);
    let stream = LogicType::ALL
        .iter()
        .position(|t| *t == logic_type)
        .unwrap() as u64;
    rng.set_stream(stream);
    (0..count).map(|_| rng.next_u64()).collect()
}

pub fn generate_suite(
    suite_seed: u64,
    counts: TypeCounts,
    config: &BenchConfig,
) -> Result<Vec<BenchCase>> {
    config.validate()?;
    let jobs: Vec<(u64, LogicType)> = LogicType::ALL
        .iter()
        .flat_map(|&t| {
            derive_case_seeds(suite_seed, t, counts.get(t))
                .into_iter()
                .map(move |s| (s, t))
        })
        .collect();
    jobs.par_iter()
        .map(|&(seed, t)| generate_case(seed, t, config))
        .collect()
}

struct Utter;

impl Utter {
    fn plain(speaker: Speaker, text: String) -> Utterance {
        Utterance {
            speaker,
            text,
            evidence: None,
            verifiable_outcome: None,
            topic: None,
            target_claim: None,
        }
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty pool")
}

fn random_user(rng: &mut ChaCha8Rng) -> Speaker {
    if rng.random_bool(0.5) {
        Speaker::UserA
    } else {
        Speaker::UserB
    }
}

pub fn generate_case(seed: u64, logic_type: LogicType, config: &BenchConfig) -> Result<BenchCase> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Target fact and distractors.
    let owner = *pick(&mut rng, tpl::OWNERS);
    let object = *pick(&mut rng, tpl::OBJECTS);
    let (attribute, values) = *pick(&mut rng, tpl::ATTRIBUTES);
    let mut shuffled: Vec<&str> = values.to_vec();
    shuffled.shuffle(&mut rng);
    let (value_a, value_b) = (shuffled[0], shuffled[1]);
    let others = &shuffled[2..];
    let subject = format!("{owner}'s {object}");

    let mut other_objects: Vec<&str> = tpl::OBJECTS
        .iter()
        .copied()
        .filter(|o| *o != object)
        .collect();
    let mut other_owners: Vec<&str> = tpl::OWNERS
        .iter()
        .copied()
        .filter(|o| *o != owner)
        .collect();
    other_objects.shuffle(&mut rng);
    other_owners.shuffle(&mut rng);
    let distractors: Vec<Distractor> = (0..config.distractors)
        .map(|i| {
            let entity = if i % 2 == 0 {
                format!("{owner}'s {}", other_objects[i / 2])
            } else {
                format!("{}'s {object}", other_owners[i / 2])
            };
            Distractor {
                entity,
                value: pick(&mut rng, others).to_string(),
            }
        })
        .collect();

    let fact = FactSpec {
        subject: subject.clone(),
        attribute: attribute.to_owned(),
        value_a: value_a.to_owned(),
        value_b: value_b.to_owned(),
        distractors,
    };

    let mut sessions: Vec<Session> = (1..=SESSION_COUNT)
        .map(|i| Session {
            index: i,
            timestamp: config.epoch + session_day(i) * SECONDS_PER_DAY,
            phase: Phase::of_session(i),
            utterances: Vec::new(),
        })
        .collect();

    // Phase 1: calibration.
    let n = config.calibration_events;
    let mut events: Vec<&str> = tpl::EVENTS.to_vec();
    events.shuffle(&mut rng);
    let outcomes = |rng: &mut ChaCha8Rng, reliability: f64| {
        let hits = BenchConfig::true_count(reliability, n);
        let mut o: Vec<bool> = (0..n).map(|i| i < hits).collect();
        o.shuffle(rng);
        o
    };
    let outcomes_a = outcomes(&mut rng, config.reliability_a);
    let outcomes_b = outcomes(&mut rng, config.reliability_b);
    for session in sessions.iter_mut().take(4) {
        let opener = pick(&mut rng, tpl::CHIT_CHAT).to_string();
        let speaker = random_user(&mut rng);
        session.utterances.push(Utter::plain(speaker, opener));
    }
    for e in 0..n {
        let session = &mut sessions[e % 4];
        for (speaker, event, outcome) in [
            (Speaker::UserA, events[2 * e], outcomes_a[e]),
            (Speaker::UserB, events[2 * e + 1], outcomes_b[e]),
        ] {
            session.utterances.push(Utterance {
                verifiable_outcome: Some(outcome),
                topic: Some(event.to_owned()),
                ..Utter::plain(speaker, fill(tpl::PREDICTION, &[("event", event)]))
            });
            let reveal = if outcome {
                tpl::OUTCOME_TRUE
            } else {
                tpl::OUTCOME_FALSE
            };
            session.utterances.push(Utterance {
                topic: Some(event.to_owned()),
                ..Utter::plain(Speaker::System, fill(reveal, &[("event", event)]))
            });
        }
    }

    // Phase 2: adversarial noise about near-duplicate entities.
    let mut noise: Vec<Utterance> = fact
        .distractors
        .iter()
        .map(|d| Utterance {
            topic: Some(d.entity.clone()),
            ..Utter::plain(
                Speaker::UserA,
                fill(
                    tpl::DISTRACTOR_CLAIM,
                    &[("attr", attribute), ("d", &d.entity), ("value", &d.value)],
                ),
            )
        })
        .collect();
    while noise.len() < config.noise_utterances {
        let d = pick(&mut rng, &fact.distractors).entity.clone();
        let text = fill(pick(&mut rng, tpl::NOISE), &[("d", &d)]);
        noise.push(Utterance {
            topic: Some(d),
            ..Utter::plain(Speaker::UserA, text)
        });
    }
    noise.shuffle(&mut rng);
    for u in noise.iter_mut() {
        u.speaker = random_user(&mut rng);
    }
    let per = config.noise_utterances / 3;
    let extra = config.noise_utterances % 3;
    let mut it = noise.into_iter();
    for k in 0..3 {
        let take = per + usize::from(k < extra);
        sessions[4 + k].utterances.extend(it.by_ref().take(take));
    }

    // Phase 3: the trap.
    let subj = subject.as_str();
    let caption_for = |claim: TargetClaim| {
        let value = fact.value_of(claim);
        EvidenceRecord {
            caption: fill(
                tpl::CAPTION_CLEAR,
                &[("subject", subj), ("attr", attribute), ("value", value)],
            ),
            visual_descriptor: VisualDescriptor {
                scene_tags: vec![
                    owner.to_lowercase(),
                    object.to_owned(),
                    value.to_owned(),
                    "daylight".into(),
                ],
                ambiguity: Ambiguity::Clear,
                image_path: None,
            },
            supports: match claim {
                TargetClaim::UserAValue => Supports::UserAClaim,
                TargetClaim::UserBValue => Supports::UserBClaim,
            },
        }
    };
    let evidence = match logic_type {
        LogicType::AStandard => caption_for(TargetClaim::UserAValue),
        LogicType::BInversion => caption_for(TargetClaim::UserBValue),
        LogicType::CAmbiguity => EvidenceRecord {
            caption: fill(
                tpl::CAPTION_VAGUE,
                &[("subject", subj), ("attr", attribute)],
            ),
            visual_descriptor: VisualDescriptor {
                scene_tags: vec![
                    owner.to_lowercase(),
                    object.to_owned(),
                    "blurry".into(),
                    "backlit".into(),
                ],
                ambiguity: Ambiguity::Vague,
                image_path: None,
            },
            supports: Supports::Neither,
        },
        LogicType::DUnknowable => EvidenceRecord {
            caption: fill(tpl::CAPTION_NONE, &[("subject", subj)]),
            visual_descriptor: VisualDescriptor {
                scene_tags: vec!["street".into(), "crowd".into(), "traffic".into()],
                ambiguity: Ambiguity::None,
                image_path: None,
            },
            supports: Supports::Neither,
        },
    };
    let claim = |speaker, template: &str, side: TargetClaim| Utterance {
        topic: Some(subject.clone()),
        target_claim: Some(side),
        ..Utter::plain(
            speaker,
            fill(
                template,
                &[
                    ("attr", attribute),
                    ("subject", subj),
                    ("value", fact.value_of(side)),
                ],
            ),
        )
    };
    let mut claim_a = claim(Speaker::UserA, tpl::CLAIM_A, TargetClaim::UserAValue);
    let mut claim_b = claim(Speaker::UserB, tpl::CLAIM_B, TargetClaim::UserBValue);
    if logic_type == LogicType::AStandard {
        claim_a.evidence = Some(evidence);
    } else {
        claim_b.evidence = Some(evidence);
    }
    sessions[7].utterances.push(Utter::plain(
        Speaker::System,
        fill(tpl::TRAP_OPENER, &[("subject", subj)]),
    ));
    sessions[7].utterances.push(claim_a);
    sessions[7].utterances.push(claim_b);

    // Phase 4: resolution.
    sessions[8].utterances.push(Utter::plain(
        Speaker::System,
        fill(tpl::RESOLUTION_OPENER, &[("subject", subj)]),
    ));
    let chat = pick(&mut rng, tpl::CHIT_CHAT).to_string();
    let speaker = random_user(&mut rng);
    sessions[8].utterances.push(Utter::plain(speaker, chat));
    sessions[9].utterances.push(claim(
        Speaker::UserA,
        tpl::RESTATE_A,
        TargetClaim::UserAValue,
    ));
    sessions[9].utterances.push(claim(
        Speaker::UserB,
        tpl::RESTATE_B,
        TargetClaim::UserBValue,
    ));
    let close = match logic_type {
        LogicType::AStandard | LogicType::BInversion => tpl::CLOSE_RESOLVED,
        LogicType::CAmbiguity => tpl::CLOSE_AMBIGUOUS,
        LogicType::DUnknowable => tpl::CLOSE_UNKNOWABLE,
    };
    sessions[9].utterances.push(Utter::plain(
        Speaker::System,
        fill(close, &[("attr", attribute), ("subject", subj)]),
    ));

    Ok(BenchCase {
        case_id: format!("{}-{seed:016x}", logic_type.letter()),
        logic_type,
        seed,
        ground_truth: logic_type.ground_truth(),
        target_fact: fact,
        sessions,
    })
}
