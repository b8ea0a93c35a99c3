//! Seeded generation of 10-session belief-dynamics cases.
//!
//! Every case follows the same four-phase arc over roughly six months:
//!
//! | sessions | phase        | content                                               |
//! |----------|--------------|-------------------------------------------------------|
//! | 1–4      | calibration  | both users make verifiable predictions; outcomes are revealed |
//! | 5–7      | noise        | high-volume chatter about near-duplicate entities     |
//! | 8        | trap         | User A and User B contradict each other; evidence is shown |
//! | 9–10     | resolution   | both restate their positions; the case is closed or left open |
//!
//! The logic type decides what the session-8 evidence supports:
//! A (standard) backs reliable User A, B (inversion) backs unreliable User B,
//! C (ambiguity) is vague, D (unknowable) is irrelevant. The probe question is
//! always whether User B's claim holds, so gold is FALSE for A, TRUE for B and
//! UNKNOWN for C and D.

mod generate;
mod io;
mod questions;
pub(crate) mod templates;
mod types;
mod validate;

pub use generate::{
    derive_case_seeds, generate_case, generate_suite, session_day, BenchConfig, TypeCounts,
};
pub use io::{read_case, read_manifest, read_qa, write_suite, ManifestEntry, SuiteFiles};
pub use questions::{layer1_questions, normalize_answer, QaDimension, QaItem};
pub use types::{
    Ambiguity, BenchCase, Distractor, EvidenceRecord, FactSpec, LogicType, Mode, Phase,
    RenderedItem, Session, Speaker, Supports, TargetClaim, Utterance, Verdict, VisualDescriptor,
    SESSION_COUNT,
};
pub use validate::{validate_case, Violation, ViolationKind};
