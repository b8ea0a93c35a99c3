//! Deterministic reference agent: ingest a case, retrieve with the disputed
//! fact as query, rerank by confidence, answer or abstain, wager, reflect.
//!
//! Source priors are not read from the case plan. The agent pairs every
//! revealed calibration outcome with the prediction it resolves and learns
//! `(hits + 1)/(total + 2)` per speaker. Evidence records get their own
//! source, `EVIDENCE`, which keeps the registry default.
//!
//! Embeddings are a hashed token bag plus a stance axis that separates the
//! two disputed values (see [`StanceEmbedder`]); contradicting claims
//! therefore have negative support factors and pull each other's consensus
//! down.
//!
//! The probe is asked `probe_delay_days` (14 by default) after the last
//! session, so temporal scores of even the final restatements are below 1.
//! Only retrieved items that take a side on the disputed fact are answer
//! candidates; the rest still shape their consensus as neighbours.

mod config;
mod embed;
mod ingest;
mod layer1;
mod reference;
mod run;

pub use config::{AgentConfig, WagerPolicy};
pub use embed::StanceEmbedder;
pub use ingest::{
    calibration_tally, case_embedder, ingest_case, learn_priors, Calibration, EVIDENCE_SOURCE,
};
pub use layer1::answer_layer1;
pub use reference::{run_reference_agent, AuditRecord, Candidate, StepTrace};
pub use run::{replay_transcripts, run_suite, write_run, RunFiles, RunResult};
