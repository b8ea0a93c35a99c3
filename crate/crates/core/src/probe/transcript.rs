use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::{Mode, Verdict};
use crate::fsutil::{parse_jsonl, to_jsonl, write_atomic};
use crate::{Error, Result};

/// Integer points over the four wager options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Wagers {
    #[serde(rename = "TRUE", default)]
    pub on_true: u32,
    #[serde(rename = "FALSE", default)]
    pub on_false: u32,
    #[serde(rename = "UNKNOWN", default)]
    pub on_unknown: u32,
    #[serde(rename = "RESERVE", default)]
    pub reserve: u32,
}

impl Wagers {
    pub fn all_reserve() -> Self {
        Self {
            reserve: 100,
            ..Self::default()
        }
    }

    /// `reserve` on RESERVE and the remainder on `verdict`.
    pub fn split(verdict: Verdict, reserve: u32) -> Self {
        let reserve = reserve.min(100);
        let mut w = Self {
            reserve,
            ..Self::default()
        };
        *w.slot(verdict) = 100 - reserve;
        w
    }

    fn slot(&mut self, v: Verdict) -> &mut u32 {
        match v {
            Verdict::True => &mut self.on_true,
            Verdict::False => &mut self.on_false,
            Verdict::Unknown => &mut self.on_unknown,
        }
    }

    pub fn on(&self, v: Verdict) -> u32 {
        match v {
            Verdict::True => self.on_true,
            Verdict::False => self.on_false,
            Verdict::Unknown => self.on_unknown,
        }
    }

    pub fn total(&self) -> u64 {
        [self.on_true, self.on_false, self.on_unknown, self.reserve]
            .iter()
            .map(|&p| u64::from(p))
            .sum()
    }

    pub fn as_array(&self) -> [u32; 4] {
        [self.on_true, self.on_false, self.on_unknown, self.reserve]
    }

    pub fn validate(&self) -> Result<()> {
        match self.total() {
            100 => Ok(()),
            other => Err(Error::WagerSum(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeTranscript {
    pub case_id: String,
    pub mode: Mode,
    pub step1_verdict: Verdict,
    pub step2_wagers: Wagers,
    pub step3_verdict: Verdict,
    pub confessed_error: bool,
    /// Free text per step, kept for audit only.
    #[serde(default)]
    pub rationale_texts: Vec<String>,
}

impl ProbeTranscript {
    pub fn validate(&self) -> Result<()> {
        self.step2_wagers.validate()
    }
}

/// Reads and validates transcripts, reporting every malformed line. An empty
/// input yields an empty list and a warning.
pub fn read_transcripts(path: &Path) -> Result<Vec<ProbeTranscript>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_transcripts(std::io::BufReader::new(file), path)
}

pub(crate) fn parse_transcripts<R: BufRead>(
    input: R,
    label: &Path,
) -> Result<Vec<ProbeTranscript>> {
    let rows = parse_jsonl(input, label, ProbeTranscript::validate)?;
    if rows.is_empty() {
        log::warn!("{}: no transcripts", label.display());
    }
    Ok(rows)
}

pub fn write_transcripts(path: &Path, transcripts: &[ProbeTranscript]) -> Result<()> {
    write_atomic(path, &to_jsonl(transcripts)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(wagers: &str) -> String {
        format!(
            r#"{{"case_id":"B-1","mode":"TEXT","step1_verdict":"FALSE","step2_wagers":{wagers},"step3_verdict":"TRUE","confessed_error":true}}"#
        )
    }

    #[test]
    fn wire_format() {
        let t: ProbeTranscript =
            serde_json::from_str(&line(r#"{"TRUE":60,"RESERVE":40}"#)).unwrap();
        assert_eq!(
            t.step2_wagers,
            Wagers {
                on_true: 60,
                reserve: 40,
                ..Default::default()
            }
        );
        assert!(t.validate().is_ok());
        let back = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<ProbeTranscript>(&back).unwrap(), t);
    }

    #[test]
    fn bad_lines_are_enumerated() {
        let good = line(r#"{"TRUE":100}"#);
        let input = format!(
            "{good}\n{good}\n{}\n{good}\n{{\"nope\":1}}\n",
            line(r#"{"TRUE":99}"#)
        );
        match parse_transcripts(input.as_bytes(), Path::new("t.jsonl")).unwrap_err() {
            Error::Lines { errors: errs, .. } => {
                assert_eq!(errs.iter().map(|e| e.line).collect::<Vec<_>>(), [3, 5]);
                assert!(errs[0].message.contains("99"));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn verdict_enum_is_closed() {
        let bad = line(r#"{"TRUE":100}"#).replace("\"TRUE\",\"confessed", "\"MAYBE\",\"confessed");
        assert!(parse_transcripts(bad.as_bytes(), Path::new("t")).is_err());
    }

    #[test]
    fn empty_input_is_empty_list() {
        assert!(parse_transcripts("".as_bytes(), Path::new("t"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn split_sums_to_100() {
        for r in 0..=120 {
            assert_eq!(Wagers::split(Verdict::False, r).total(), 100);
        }
    }
}
