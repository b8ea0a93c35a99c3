//! Selective-prediction metrics over answer/abstain records.
//!
//! Two abstention regimes are supported. Under `LABEL_ABSTAIN` (fact
//! verification) an abstention is the "not enough info" label and is correct
//! exactly when the gold label is NEI. Under `COVERAGE` (open QA) an
//! abstention is a non-answer: raw accuracy only counts answered-correct.
//!
//! ```text
//! selective(α) = (answered_correct + correct_abstain + α·wrong_abstain) / N
//! utility(λ, r) = answered_correct − λ·answered_wrong + r·abstain
//! ```
//!
//! Counts are real-valued so seed-averaged tables can be fed in directly.

mod metrics;
mod records;
mod report;

pub use metrics::{
    alpha_sweep, risk_coverage, selective_score, stability, stability_with, utility,
    RiskCoveragePoint, SelectiveSummary, Stability, StdConvention,
};
pub use records::{is_abstain_label, read_records, summarize, EvalRecord, Prediction, Regime};
pub use report::{write_eval_outputs, EvalFiles, EvalParams};
