//! Per-item confidence from source credibility, temporal decay and network
//! consensus, plus reranking and abstention on top of it.
//!
//! The combined score is a self-normalising weighted sum clamped to `[0, 1]`:
//!
//! ```text
//! C(M_i) = clamp( Σ_k w'_k · component_k(M_i), 0, 1 ),   w'_k = w_k / Σ_enabled w
//! ```
//!
//! Disabled components drop out of both the numerator and the normalisation,
//! which is how the `st`, `tc` and `cs` ablation variants are expressed.

mod components;
mod config;
mod decision;
mod scoring;
mod weights;

pub use components::{
    decay, network_consensus, source_score, support_factor, temporal_score, Flagged,
    TemporalConfig, SECONDS_PER_DAY,
};
pub use config::{ConfidenceConfig, MaskSpec, RawWeights};
pub use decision::{abstain_decision, rerank, AbstainPolicy, AbstainReason, Decision};
pub use scoring::{
    score_all, score_retrieved, write_reports_jsonl, ConfidenceFlag, ConfidenceReport,
    ConsensusConfig, EdgeWeight,
};
pub use weights::{combined_confidence, Component, ComponentMask, ConfidenceWeights, Variant};
