use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const SESSION_COUNT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LogicType {
    AStandard,
    BInversion,
    CAmbiguity,
    DUnknowable,
}

impl LogicType {
    pub const ALL: [LogicType; 4] = [
        LogicType::AStandard,
        LogicType::BInversion,
        LogicType::CAmbiguity,
        LogicType::DUnknowable,
    ];

    pub fn letter(self) -> char {
        match self {
            LogicType::AStandard => 'A',
            LogicType::BInversion => 'B',
            LogicType::CAmbiguity => 'C',
            LogicType::DUnknowable => 'D',
        }
    }

    /// Types A and B have a determinate answer.
    pub fn is_deterministic(self) -> bool {
        matches!(self, LogicType::AStandard | LogicType::BInversion)
    }

    pub fn ground_truth(self) -> Verdict {
        match self {
            LogicType::AStandard => Verdict::False,
            LogicType::BInversion => Verdict::True,
            LogicType::CAmbiguity | LogicType::DUnknowable => Verdict::Unknown,
        }
    }

    /// Theoretical (text, vision) signal verdicts used for modality alignment.
    /// The text signal follows the historically reliable User A, who denies
    /// User B's claim; the visual signal follows the evidence.
    pub fn signal_vectors(self) -> (Verdict, Verdict) {
        let vision = match self {
            LogicType::AStandard => Verdict::False,
            LogicType::BInversion => Verdict::True,
            LogicType::CAmbiguity | LogicType::DUnknowable => Verdict::Unknown,
        };
        (Verdict::False, vision)
    }
}

impl fmt::Display for LogicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for LogicType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "A_STANDARD" => Ok(LogicType::AStandard),
            "B" | "B_INVERSION" => Ok(LogicType::BInversion),
            "C" | "C_AMBIGUITY" => Ok(LogicType::CAmbiguity),
            "D" | "D_UNKNOWABLE" => Ok(LogicType::DUnknowable),
            other => Err(Error::InvalidConfig(format!(
                "unknown logic type `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Text,
    Vision,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Text => "TEXT",
            Mode::Vision => "VISION",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Mode::Text),
            "vision" => Ok(Mode::Vision),
            other => Err(Error::InvalidConfig(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Phase {
    Calibration,
    Noise,
    Trap,
    Resolution,
}

impl Phase {
    /// Phase of the 1-based session `index`.
    pub fn of_session(index: usize) -> Phase {
        match index {
            1..=4 => Phase::Calibration,
            5..=7 => Phase::Noise,
            8 => Phase::Trap,
            _ => Phase::Resolution,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Speaker {
    UserA,
    UserB,
    System,
}

impl Speaker {
    pub fn source_id(self) -> &'static str {
        match self {
            Speaker::UserA => "USER_A",
            Speaker::UserB => "USER_B",
            Speaker::System => "SYSTEM",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Supports {
    UserAClaim,
    UserBClaim,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Ambiguity {
    Clear,
    Vague,
    None,
}

/// Structured stand-in for a raw image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisualDescriptor {
    pub scene_tags: Vec<String>,
    pub ambiguity: Ambiguity,
    /// Optional path to a real image file for agents that consume pixels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_path: Option<String>,
}

impl VisualDescriptor {
    pub fn render(&self) -> String {
        let clarity = match self.ambiguity {
            Ambiguity::Clear => "clear",
            Ambiguity::Vague => "vague",
            Ambiguity::None => "unrelated",
        };
        format!(
            "[image] tags: {}; clarity: {clarity}",
            self.scene_tags.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceRecord {
    /// Oracle caption shown in TEXT mode.
    pub caption: String,
    /// Shown in VISION mode.
    pub visual_descriptor: VisualDescriptor,
    pub supports: Supports,
}

impl EvidenceRecord {
    pub fn render(&self, mode: Mode) -> String {
        match mode {
            Mode::Text => self.caption.clone(),
            Mode::Vision => self.visual_descriptor.render(),
        }
    }
}

/// Which side of the target-fact dispute an utterance asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TargetClaim {
    UserAValue,
    UserBValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Utterance {
    pub speaker: Speaker,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<EvidenceRecord>,
    /// Set on calibration predictions: whether the prediction came true.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verifiable_outcome: Option<bool>,
    /// Event or entity the utterance is about, when it has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_claim: Option<TargetClaim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    /// 1-based.
    pub index: usize,
    pub timestamp: u64,
    pub phase: Phase,
    pub utterances: Vec<Utterance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distractor {
    pub entity: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactSpec {
    /// e.g. "Maya's bicycle".
    pub subject: String,
    pub attribute: String,
    pub value_a: String,
    pub value_b: String,
    pub distractors: Vec<Distractor>,
}

impl FactSpec {
    /// The probe proposition: does User B's claim hold?
    pub fn proposition(&self) -> String {
        format!(
            "Is the {} of {} {}?",
            self.attribute, self.subject, self.value_b
        )
    }

    /// Stance-neutral retrieval query naming both disputed values.
    pub fn query(&self) -> String {
        format!(
            "What is the {} of {}: {} or {}?",
            self.attribute, self.subject, self.value_a, self.value_b
        )
    }

    pub fn value_of(&self, claim: TargetClaim) -> &str {
        match claim {
            TargetClaim::UserAValue => &self.value_a,
            TargetClaim::UserBValue => &self.value_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchCase {
    pub case_id: String,
    pub logic_type: LogicType,
    pub seed: u64,
    pub ground_truth: Verdict,
    pub target_fact: FactSpec,
    pub sessions: Vec<Session>,
}

/// One utterance or evidence record as an agent sees it in a given mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedItem {
    pub id: String,
    pub session: usize,
    pub timestamp: u64,
    pub speaker: Speaker,
    pub text: String,
    pub is_evidence: bool,
}

impl BenchCase {
    /// Flattens the dialogue for `mode`. Evidence records become their own
    /// items right after the utterance that carries them; only their text
    /// depends on the mode.
    pub fn render(&self, mode: Mode) -> Vec<RenderedItem> {
        let mut out = Vec::new();
        for s in &self.sessions {
            for (u_idx, u) in s.utterances.iter().enumerate() {
                out.push(RenderedItem {
                    id: format!("s{:02}-u{:02}", s.index, u_idx),
                    session: s.index,
                    timestamp: s.timestamp,
                    speaker: u.speaker,
                    text: u.text.clone(),
                    is_evidence: false,
                });
                if let Some(ev) = &u.evidence {
                    out.push(RenderedItem {
                        id: format!("s{:02}-u{:02}-ev", s.index, u_idx),
                        session: s.index,
                        timestamp: s.timestamp,
                        speaker: u.speaker,
                        text: ev.render(mode),
                        is_evidence: true,
                    });
                }
            }
        }
        out
    }

    pub fn evidence(&self) -> impl Iterator<Item = (&Session, &EvidenceRecord)> {
        self.sessions.iter().flat_map(|s| {
            s.utterances
                .iter()
                .filter_map(move |u| u.evidence.as_ref().map(|e| (s, e)))
        })
    }

    pub fn session(&self, index: usize) -> Option<&Session> {
        self.sessions.iter().find(|s| s.index == index)
    }

    /// Timestamp at which the probe is asked (end of the last session).
    pub fn probe_time(&self) -> u64 {
        self.sessions.iter().map(|s| s.timestamp).max().unwrap_or(0)
    }
}
