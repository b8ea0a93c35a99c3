use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::generate::session_day;
use super::types::*;
use crate::memory::tokenize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    SessionCount,
    SessionOrder,
    Phase,
    TimeSpan,
    GroundTruth,
    Ambiguity,
    Supports,
    Calibration,
    Noise,
    Distractor,
    Contradiction,
    CaseId,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::SessionCount => "session count",
            ViolationKind::SessionOrder => "session order",
            ViolationKind::Phase => "phase",
            ViolationKind::TimeSpan => "time span",
            ViolationKind::GroundTruth => "ground truth",
            ViolationKind::Ambiguity => "ambiguity",
            ViolationKind::Supports => "supports",
            ViolationKind::Calibration => "calibration",
            ViolationKind::Noise => "noise",
            ViolationKind::Distractor => "distractor",
            ViolationKind::Contradiction => "contradiction",
            ViolationKind::CaseId => "case id",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn check(&mut self, ok: bool, kind: ViolationKind, message: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Violation {
                kind,
                message: message(),
            });
        }
    }
}

/// Checks every structural invariant of a case. An empty result means the
/// case is well formed.
pub fn validate_case(case: &BenchCase) -> Vec<Violation> {
    use ViolationKind as K;
    let mut v = Collector(Vec::new());

    v.check(
        case.sessions.len() == SESSION_COUNT,
        K::SessionCount,
        || {
            format!(
                "expected {SESSION_COUNT} sessions, found {}",
                case.sessions.len()
            )
        },
    );
    for (pos, s) in case.sessions.iter().enumerate() {
        v.check(s.index == pos + 1, K::SessionOrder, || {
            format!("session at position {} has index {}", pos + 1, s.index)
        });
        v.check(s.phase == Phase::of_session(s.index), K::Phase, || {
            format!(
                "session {} is {:?}, expected {:?}",
                s.index,
                s.phase,
                Phase::of_session(s.index)
            )
        });
    }
    for w in case.sessions.windows(2) {
        v.check(w[0].timestamp < w[1].timestamp, K::SessionOrder, || {
            format!(
                "session {} is not later than session {}",
                w[1].index, w[0].index
            )
        });
    }
    if let (Some(first), Some(last)) = (case.sessions.first(), case.sessions.last()) {
        let span_days = last.timestamp.saturating_sub(first.timestamp) / 86_400;
        let expected = session_day(SESSION_COUNT);
        v.check(span_days.abs_diff(expected) <= 10, K::TimeSpan, || {
            format!("sessions span {span_days} days, expected about {expected}")
        });
    }

    v.check(
        case.ground_truth == case.logic_type.ground_truth(),
        K::GroundTruth,
        || {
            format!(
                "{:?} case has ground truth {}",
                case.logic_type, case.ground_truth
            )
        },
    );
    let prefix = format!("{}-", case.logic_type.letter());
    v.check(case.case_id.starts_with(&prefix), K::CaseId, || {
        format!("case id `{}` does not start with `{prefix}`", case.case_id)
    });

    // Evidence matches the logic type.
    let evidence: Vec<(&Session, &EvidenceRecord)> = case.evidence().collect();
    v.check(!evidence.is_empty(), K::Supports, || {
        "case carries no evidence record".into()
    });
    for (s, e) in &evidence {
        let (supports, ambiguity) = (e.supports, e.visual_descriptor.ambiguity);
        match case.logic_type {
            LogicType::AStandard => {
                v.check(supports == Supports::UserAClaim, K::Supports, || {
                    format!(
                        "type A evidence in session {} supports {supports:?}",
                        s.index
                    )
                });
                v.check(ambiguity == Ambiguity::Clear, K::Ambiguity, || {
                    format!("type A evidence in session {} is {ambiguity:?}", s.index)
                });
            }
            LogicType::BInversion => {
                v.check(supports == Supports::UserBClaim, K::Supports, || {
                    format!(
                        "type B evidence in session {} supports {supports:?}",
                        s.index
                    )
                });
                v.check(ambiguity == Ambiguity::Clear, K::Ambiguity, || {
                    format!("type B evidence in session {} is {ambiguity:?}", s.index)
                });
                v.check(s.index == 8, K::Contradiction, || {
                    format!(
                        "type B evidence appears in session {} instead of the trap",
                        s.index
                    )
                });
            }
            LogicType::CAmbiguity => {
                v.check(ambiguity == Ambiguity::Vague, K::Ambiguity, || {
                    format!("type C evidence in session {} is {ambiguity:?}", s.index)
                });
                v.check(supports == Supports::Neither, K::Supports, || {
                    format!(
                        "type C evidence in session {} supports {supports:?}",
                        s.index
                    )
                });
            }
            LogicType::DUnknowable => {
                v.check(supports == Supports::Neither, K::Supports, || {
                    format!(
                        "type D evidence in session {} supports {supports:?}",
                        s.index
                    )
                });
            }
        }
    }

    // Calibration: User A must resolve true more often than User B.
    let rate = |who: Speaker| {
        let outcomes: Vec<bool> = case
            .sessions
            .iter()
            .filter(|s| s.phase == Phase::Calibration)
            .flat_map(|s| &s.utterances)
            .filter(|u| u.speaker == who)
            .filter_map(|u| u.verifiable_outcome)
            .collect();
        let hits = outcomes.iter().filter(|o| **o).count();
        (!outcomes.is_empty()).then(|| hits as f64 / outcomes.len() as f64)
    };
    match (rate(Speaker::UserA), rate(Speaker::UserB)) {
        (Some(a), Some(b)) => v.check(a > b, K::Calibration, || {
            format!("User A resolves true at {a:.2}, not above User B's {b:.2}")
        }),
        _ => v.check(false, K::Calibration, || {
            "calibration events missing for a user".into()
        }),
    }

    // Noise and distractors.
    let fact = &case.target_fact;
    let noise_count: usize = case
        .sessions
        .iter()
        .filter(|s| s.phase == Phase::Noise)
        .map(|s| s.utterances.len())
        .sum();
    v.check(
        noise_count >= fact.distractors.len().max(1),
        K::Noise,
        || format!("only {noise_count} noise utterances"),
    );
    let subject_tokens: HashSet<String> = tokenize(&fact.subject).collect();
    for d in &fact.distractors {
        v.check(
            tokenize(&d.entity).any(|t| subject_tokens.contains(&t)),
            K::Distractor,
            || {
                format!(
                    "distractor `{}` shares no token with `{}`",
                    d.entity, fact.subject
                )
            },
        );
        v.check(
            d.value != fact.value_a && d.value != fact.value_b,
            K::Distractor,
            || format!("distractor `{}` reuses a disputed value", d.entity),
        );
        if let Some(trap) = case.session(8) {
            v.check(
                trap.utterances.iter().all(|u| !u.text.contains(&d.entity)),
                K::Distractor,
                || format!("distractor `{}` appears in the trap session", d.entity),
            );
        }
    }
    v.check(fact.value_a != fact.value_b, K::Contradiction, || {
        "both users claim the same value".into()
    });

    // Exactly one evidence-backed contradiction in the trap for A/B.
    if case.logic_type.is_deterministic() {
        let backed = case
            .sessions
            .iter()
            .flat_map(|s| s.utterances.iter().map(move |u| (s, u)))
            .filter(|(_, u)| u.target_claim.is_some() && u.evidence.is_some())
            .count();
        let trap_has_both = case.session(8).is_some_and(|t| {
            t.utterances
                .iter()
                .any(|u| u.target_claim == Some(TargetClaim::UserAValue))
                && t.utterances
                    .iter()
                    .any(|u| u.target_claim == Some(TargetClaim::UserBValue))
        });
        v.check(backed == 1 && trap_has_both, K::Contradiction, || {
            format!("expected one evidence-backed claim pair in the trap, found {backed}")
        });
    }

    v.0
}
