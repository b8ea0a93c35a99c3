use std::fmt;

use serde::{Deserialize, Serialize};

use super::types::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QaDimension {
    FactRetrieval,
    LogicReasoning,
    SourceAnalysis,
    AdversarialDistraction,
}

impl QaDimension {
    pub const ALL: [QaDimension; 4] = [
        QaDimension::FactRetrieval,
        QaDimension::LogicReasoning,
        QaDimension::SourceAnalysis,
        QaDimension::AdversarialDistraction,
    ];
}

impl fmt::Display for QaDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QaDimension::FactRetrieval => "fact_retrieval",
            QaDimension::LogicReasoning => "logic_reasoning",
            QaDimension::SourceAnalysis => "source_analysis",
            QaDimension::AdversarialDistraction => "adversarial_distraction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaItem {
    pub question_id: String,
    pub case_id: String,
    pub dimension: QaDimension,
    pub question: String,
    pub gold: String,
}

/// Lowercases, drops punctuation, collapses whitespace and strips a leading
/// article, so "The Red." and "red" compare equal.
pub fn normalize_answer(answer: &str) -> String {
    let cleaned: String = answer
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c.is_whitespace() {
                c.to_ascii_lowercase()
            } else {
                ' '
            }
        })
        .collect();
    let mut words: Vec<&str> = cleaned.split_whitespace().collect();
    if words.len() > 1 && matches!(words[0], "the" | "a" | "an") {
        words.remove(0);
    }
    words.join(" ")
}

/// Layer-1 questions with gold answers taken from the generation plan.
pub fn layer1_questions(case: &BenchCase) -> Vec<QaItem> {
    let fact = &case.target_fact;
    let mut out: Vec<(QaDimension, String, String)> = Vec::new();

    for s in case
        .sessions
        .iter()
        .filter(|s| s.phase == Phase::Calibration)
    {
        for u in &s.utterances {
            if let (Some(outcome), Some(event)) = (u.verifiable_outcome, &u.topic) {
                out.push((
                    QaDimension::FactRetrieval,
                    format!("Did it turn out that {event}?"),
                    if outcome { "yes" } else { "no" }.into(),
                ));
            }
        }
    }

    if let Some((_, ev)) = case.evidence().next() {
        let gold = match ev.supports {
            Supports::UserAClaim => "user a",
            Supports::UserBClaim => "user b",
            Supports::Neither => "neither",
        };
        out.push((
            QaDimension::LogicReasoning,
            format!(
                "Did the photo shared about {} support User A, User B, or neither?",
                fact.subject
            ),
            gold.into(),
        ));
    }

    let hits = |who: Speaker| {
        case.sessions
            .iter()
            .flat_map(|s| &s.utterances)
            .filter(|u| u.speaker == who && u.verifiable_outcome == Some(true))
            .count()
    };
    let (a, b) = (hits(Speaker::UserA), hits(Speaker::UserB));
    out.push((
        QaDimension::SourceAnalysis,
        "Whose predictions came true more often, User A or User B?".into(),
        if a >= b { "user a" } else { "user b" }.into(),
    ));
    out.push((
        QaDimension::SourceAnalysis,
        "How many of User A's predictions came true?".into(),
        a.to_string(),
    ));

    for d in &fact.distractors {
        out.push((
            QaDimension::AdversarialDistraction,
            format!("What is the {} of {}?", fact.attribute, d.entity),
            d.value.clone(),
        ));
    }

    out.into_iter()
        .enumerate()
        .map(|(i, (dimension, question, gold))| QaItem {
            question_id: format!("{}-q{:02}", case.case_id, i + 1),
            case_id: case.case_id.clone(),
            dimension,
            question,
            gold,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_case, BenchConfig};

    #[test]
    fn every_dimension_covered() {
        for t in LogicType::ALL {
            let case = generate_case(5, t, &BenchConfig::default()).unwrap();
            let qs = layer1_questions(&case);
            for d in QaDimension::ALL {
                assert!(qs.iter().any(|q| q.dimension == d), "{t:?} lacks {d}");
            }
            let ids: std::collections::HashSet<_> = qs.iter().map(|q| &q.question_id).collect();
            assert_eq!(ids.len(), qs.len());
        }
    }

    #[test]
    fn fact_retrieval_gold_is_the_planned_outcome() {
        let case = generate_case(11, LogicType::AStandard, &BenchConfig::default()).unwrap();
        let qs = layer1_questions(&case);
        for s in &case.sessions {
            for u in &s.utterances {
                if let (Some(o), Some(ev)) = (u.verifiable_outcome, &u.topic) {
                    let q = qs
                        .iter()
                        .find(|q| q.question.contains(ev.as_str()))
                        .unwrap();
                    assert_eq!(q.gold, if o { "yes" } else { "no" });
                }
            }
        }
    }

    #[test]
    fn distraction_gold_differs_from_target() {
        let case = generate_case(12, LogicType::BInversion, &BenchConfig::default()).unwrap();
        for q in layer1_questions(&case)
            .iter()
            .filter(|q| q.dimension == QaDimension::AdversarialDistraction)
        {
            assert_ne!(q.gold, case.target_fact.value_a);
            assert_ne!(q.gold, case.target_fact.value_b);
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_answer("  The Red. "), "red");
        assert_eq!(normalize_answer("User   A!"), "user a");
        assert_eq!(normalize_answer("the"), "the");
    }
}
