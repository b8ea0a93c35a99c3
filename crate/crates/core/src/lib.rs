//! Confidence-aware memory for long-horizon agents.
//!
//! The crate is organised around the lifecycle of a reliability experiment:
//!
//! - [`memory`]: memory items, a flat store with cosine top-k retrieval and a
//!   deterministic hashing embedder.
//! - [`confidence`]: per-item source, temporal and network-consensus scores,
//!   their self-normalising combination, reranking and abstention.
//! - [`bench`]: a seeded generator for 10-session belief-dynamics dialogues
//!   across the four logic types (standard, inversion, ambiguity, unknowable).
//! - [`probe`]: scoring of verdict → wager → reflection probe transcripts.
//! - [`selective`]: answer/abstain metrics (selective score, utility,
//!   risk–coverage, cross-seed stability).
//! - [`agent`]: a deterministic reference agent wiring all of the above.
//! - [`pipeline`]: the file-level commands behind the `mma` binary.

pub mod agent;
pub mod bench;
pub mod confidence;
pub mod error;
mod fsutil;
pub mod memory;
pub mod pipeline;
pub mod probe;
pub mod selective;

pub use error::{Error, LineError, Result};

/// Version string embedded in every report.
pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));
