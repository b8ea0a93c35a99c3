//! Scoring of the three-step belief probe.
//!
//! An agent first states a verdict on the target proposition, then spreads
//! 100 points over `TRUE`, `FALSE`, `UNKNOWN` and `RESERVE`, then reflects
//! and gives a final verdict, optionally confessing that its first answer
//! was wrong.
//!
//! | metric | definition |
//! |--------|------------|
//! | CoRe (types A/B) | `β·1(ŷ = y*) + (1 − β)·w_winner/100` |
//! | CoRe (types C/D) | `w_reserve/100 − γ·1(ŷ ≠ UNKNOWN)` |
//! | MSA | text-dominant if ŷ matches the text signal, else vision-dominant if it matches the visual signal, else confusion |
//! | ΔH_rel | `2(H_text − H_vis)/(H_text + H_vis)` over mean wager entropies |
//! | SCR | step-1 wrong → step-3 right, over step-1 wrong |
//! | FCR | step-1 right → step-3 wrong, over step-1 right |

mod metrics;
mod report;
mod transcript;

pub use metrics::{
    core_score, entropy_of_wagers, fcr, logic_collapse_count, msa_classify, relative_uncertainty,
    scr, CoreParams, MsaClass, RelativeUncertainty,
};
pub(crate) use report::report_csv_bytes;
pub use report::{
    aggregate_report, aggregate_report_with, read_answers, score_transcripts, write_report,
    ModeReport, MsaCounts, ProbeReport, QaAnswer, QaTally, ReportFiles, ScoredCase, TypeBreakdown,
    VerdictStep,
};
pub use transcript::{read_transcripts, write_transcripts, ProbeTranscript, Wagers};
