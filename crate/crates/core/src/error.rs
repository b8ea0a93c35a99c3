use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("zero-norm vector has no direction")]
    ZeroNorm,

    #[error("cannot embed empty text")]
    EmptyText,

    #[error("embedding dimension must be at least {min}, got {actual}")]
    DimensionTooSmall { min: usize, actual: usize },

    #[error("duplicate memory id `{0}`")]
    DuplicateId(String),

    #[error("invalid memory item `{id}`: {reason}")]
    InvalidItem { id: String, reason: String },

    #[error("prior for `{source_id}` is {value}, expected a value in [0, 1]")]
    PriorOutOfRange { source_id: String, value: f64 },

    #[error("every confidence component is masked or has zero weight")]
    AllComponentsMasked,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown ablation variant `{0}` (expected full, st, tc or cs)")]
    UnknownVariant(String),

    #[error("wager points sum to {0}, expected exactly 100")]
    WagerSum(u64),

    #[error("length mismatch: {left} transcripts vs {right} gold labels")]
    LengthMismatch { left: usize, right: usize },

    #[error("no records to summarize")]
    EmptyRecords,

    #[error("stability needs at least two seeds, got {0}")]
    TooFewSeeds(usize),

    #[error("{input}: {}", format_line_errors(.errors))]
    Lines {
        input: String,
        errors: Vec<LineError>,
    },

    #[error("{} case(s) failed validation:\n  {}", .0.len(), .0.join("\n  "))]
    InvalidCases(Vec<String>),

    #[error("case `{0}` not found in suite")]
    UnknownCase(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for inputs that parsed but break a documented invariant, as
    /// opposed to unreadable or malformed inputs.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::PriorOutOfRange { .. }
                | Error::AllComponentsMasked
                | Error::InvalidConfig(_)
                | Error::UnknownVariant(_)
                | Error::DimensionTooSmall { .. }
                | Error::TooFewSeeds(_)
                | Error::InvalidCases(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// One offending line of a JSONL input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

fn format_line_errors(errors: &[LineError]) -> String {
    let mut out = format!("{} malformed line(s):", errors.len());
    for e in errors {
        out.push_str(&format!("\n  line {}: {}", e.line, e.message));
    }
    out
}
