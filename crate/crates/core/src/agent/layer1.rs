use super::{calibration_tally, case_embedder, AgentConfig, EVIDENCE_SOURCE};
use crate::bench::templates::{parse_distractor_claim, parse_outcome};
use crate::bench::{layer1_questions, BenchCase, QaDimension, Speaker, Verdict};
use crate::memory::{Embedder, MemoryStore};
use crate::probe::QaAnswer;
use crate::Result;

const NO_ANSWER: &str = "unknown";

/// Answers the Layer-1 questions of `case` from `store`. Fact and
/// distraction questions use plain top-k retrieval with no confidence
/// weighting; the first retrieved item that answers the question wins.
pub fn answer_layer1(
    case: &BenchCase,
    store: &MemoryStore,
    cfg: &AgentConfig,
) -> Result<Vec<QaAnswer>> {
    let embedder = case_embedder(case, cfg)?;
    let tally = calibration_tally(case);
    let mut out = Vec::new();
    for q in layer1_questions(case) {
        let answer = match q.dimension {
            QaDimension::FactRetrieval => {
                let event = q
                    .question
                    .trim_start_matches("Did it turn out that ")
                    .trim_end_matches('?');
                let hits = store.retrieve_topk(&embedder.embed(&q.question)?, cfg.k)?;
                hits.iter()
                    .filter_map(|h| parse_outcome(&h.item.content))
                    .find(|(_, e)| e == event)
                    .map(|(ok, _)| if ok { "yes" } else { "no" }.to_owned())
            }
            QaDimension::AdversarialDistraction => {
                let hits = store.retrieve_topk(&embedder.embed(&q.question)?, cfg.k)?;
                hits.iter()
                    .filter_map(|h| parse_distractor_claim(&h.item.content))
                    .find(|(_, entity, _)| q.question.contains(&format!(" of {entity}?")))
                    .map(|(_, _, value)| value)
            }
            QaDimension::LogicReasoning => store
                .items()
                .iter()
                .find(|i| i.source == EVIDENCE_SOURCE)
                .map(|i| match embedder.stance(&i.content) {
                    Some(Verdict::True) => "user b",
                    Some(Verdict::False) => "user a",
                    _ => "neither",
                })
                .map(str::to_owned),
            QaDimension::SourceAnalysis => {
                let a = tally.get(&Speaker::UserA).copied().unwrap_or_default();
                if q.question.starts_with("How many") {
                    Some(a.hits.to_string())
                } else {
                    let reg = store.registry();
                    Some(
                        if reg.prior("USER_A") >= reg.prior("USER_B") {
                            "user a"
                        } else {
                            "user b"
                        }
                        .to_owned(),
                    )
                }
            }
        };
        out.push(QaAnswer {
            question_id: q.question_id,
            mode: Some(cfg.mode),
            answer: answer.unwrap_or_else(|| NO_ANSWER.to_owned()),
        });
    }
    Ok(out)
}
