use serde::{Deserialize, Serialize};

use super::{case_embedder, ingest_case, AgentConfig};
use crate::bench::{BenchCase, Mode, Verdict};
use crate::confidence::{abstain_decision, score_all, ConfidenceReport, ConsensusConfig, Decision};
use crate::memory::{Embedder, MemoryId, MemoryStore};
use crate::probe::ProbeTranscript;
use crate::Result;

/// A retrieved item that takes a side on the disputed fact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub id: MemoryId,
    pub stance: Verdict,
}

/// Everything behind one verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepTrace {
    pub step: u8,
    pub passes: usize,
    pub reports: Vec<ConfidenceReport>,
    pub candidates: Vec<Candidate>,
    pub decision: Decision,
    pub verdict: Verdict,
}

impl StepTrace {
    pub fn top_confidence(&self) -> Option<f64> {
        match &self.decision {
            Decision::Answer { combined, .. } => Some(*combined),
            Decision::Abstain { .. } => None,
        }
    }

    fn rationale(&self) -> String {
        match &self.decision {
            Decision::Answer { item, combined } => {
                format!(
                    "{} from {item} (confidence {combined:.4}, {} passes)",
                    self.verdict, self.passes
                )
            }
            Decision::Abstain { reasons } => {
                let r: Vec<String> = reasons.iter().map(|r| format!("{r:?}")).collect();
                format!(
                    "UNKNOWN: abstained ({}) after {} passes",
                    r.join(", "),
                    self.passes
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub case_id: String,
    pub mode: Mode,
    pub query: String,
    pub steps: Vec<StepTrace>,
}

fn decide(
    store: &MemoryStore,
    query: &[f64],
    stance_of: impl Fn(&str) -> Option<Verdict>,
    cfg: &AgentConfig,
    now: u64,
    step: u8,
    passes: usize,
) -> Result<StepTrace> {
    let c = &cfg.confidence;
    let consensus = ConsensusConfig {
        passes,
        ..c.consensus()
    };
    let reports = score_all(
        store,
        query,
        cfg.k,
        &c.weights()?,
        &c.temporal(now)?,
        &consensus,
    )?;
    let mut candidates = Vec::new();
    let mut stance_reports = Vec::new();
    for r in &reports {
        let item = store.get(&r.id).expect("retrieved ids exist");
        if let Some(stance) = stance_of(&item.content) {
            candidates.push(Candidate {
                id: r.id.clone(),
                stance,
            });
            stance_reports.push(r.clone());
        }
    }
    let decision = abstain_decision(&stance_reports, &c.policy());
    let verdict = match &decision {
        Decision::Answer { item, .. } => candidates.iter().find(|c| &c.id == item).unwrap().stance,
        Decision::Abstain { .. } => Verdict::Unknown,
    };
    Ok(StepTrace {
        step,
        passes,
        reports,
        candidates,
        decision,
        verdict,
    })
}

/// Runs the three-step probe on one case.
///
/// Step 1 answers with the stance of the highest-confidence retrieved item
/// that takes a side, or UNKNOWN when the abstention rule fires. Step 2
/// wagers on that decision. Step 3 repeats step 1 with one more consensus
/// pass and confesses an error when the verdict changes.
pub fn run_reference_agent(
    case: &BenchCase,
    cfg: &AgentConfig,
) -> Result<(ProbeTranscript, AuditRecord)> {
    cfg.validate()?;
    let store = ingest_case(case, cfg.mode, cfg)?;
    let embedder = case_embedder(case, cfg)?;
    let query_text = case.target_fact.query();
    let query = embedder.embed(&query_text)?;
    let now = cfg.probe_now(case);
    let stance_of = |t: &str| embedder.stance(t);
    let passes = cfg.confidence.passes;

    let first = decide(&store, &query, stance_of, cfg, now, 1, passes)?;
    let wagers = cfg
        .wager_policy
        .allocate(first.verdict, first.top_confidence());
    let third = decide(&store, &query, stance_of, cfg, now, 3, passes + 1)?;
    let confessed = third.verdict != first.verdict;

    let transcript = ProbeTranscript {
        case_id: case.case_id.clone(),
        mode: cfg.mode,
        step1_verdict: first.verdict,
        step2_wagers: wagers,
        step3_verdict: third.verdict,
        confessed_error: confessed,
        rationale_texts: vec![
            first.rationale(),
            format!("reserve {} of 100", wagers.reserve),
            third.rationale(),
        ],
    };
    let audit = AuditRecord {
        case_id: case.case_id.clone(),
        mode: cfg.mode,
        query: query_text,
        steps: vec![first, third],
    };
    Ok((transcript, audit))
}
