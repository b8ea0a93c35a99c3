use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ProbeTranscript, Wagers};
use crate::bench::{LogicType, Verdict};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreParams {
    /// Weight of verdict correctness against the wager on the gold option.
    pub beta: f64,
    /// Penalty for committing to a verdict on an undecidable case.
    pub gamma: f64,
}

impl Default for CoreParams {
    fn default() -> Self {
        Self {
            beta: 0.5,
            gamma: 1.0,
        }
    }
}

impl CoreParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidConfig(format!(
                "beta must lie in [0, 1], got {beta}"
            )));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "gamma must be nonnegative, got {gamma}"
            )));
        }
        Ok(Self { beta, gamma })
    }
}

/// CoRe score of the final verdict `ŷ = step3_verdict` against `gold`.
pub fn core_score(
    t: &ProbeTranscript,
    gold: Verdict,
    logic_type: LogicType,
    p: &CoreParams,
) -> Result<f64> {
    let w = &t.step2_wagers;
    w.validate()?;
    let y = t.step3_verdict;
    Ok(if logic_type.is_deterministic() {
        let hit = if y == gold { 1.0 } else { 0.0 };
        p.beta * hit + (1.0 - p.beta) * f64::from(w.on(gold)) / 100.0
    } else {
        let committed = if y != Verdict::Unknown { 1.0 } else { 0.0 };
        f64::from(w.reserve) / 100.0 - p.gamma * committed
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MsaClass {
    TextDominant,
    VisionDominant,
    Confusion,
}

impl fmt::Display for MsaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MsaClass::TextDominant => "TEXT_DOMINANT",
            MsaClass::VisionDominant => "VISION_DOMINANT",
            MsaClass::Confusion => "CONFUSION",
        })
    }
}

/// Text agreement is checked first, so a verdict matching both signals is
/// text-dominant.
pub fn msa_classify(model: Verdict, s_text: Verdict, s_vis: Verdict) -> MsaClass {
    if model == s_text {
        MsaClass::TextDominant
    } else if model == s_vis {
        MsaClass::VisionDominant
    } else {
        MsaClass::Confusion
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativeUncertainty {
    pub value: f64,
    /// Set when both entropies are zero and the value is defined as 0.
    pub both_zero: bool,
}

/// `2(H_text − H_vis)/(H_text + H_vis)`; positive means the visual stream is
/// the more certain one.
pub fn relative_uncertainty(h_text: f64, h_vis: f64) -> Result<RelativeUncertainty> {
    if !(h_text >= 0.0 && h_vis >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "entropies must be nonnegative, got {h_text} and {h_vis}"
        )));
    }
    let sum = h_text + h_vis;
    if sum == 0.0 {
        return Ok(RelativeUncertainty {
            value: 0.0,
            both_zero: true,
        });
    }
    Ok(RelativeUncertainty {
        value: 2.0 * (h_text - h_vis) / sum,
        both_zero: false,
    })
}

/// Shannon entropy (nats) of the wager split.
pub fn entropy_of_wagers(w: &Wagers) -> Result<f64> {
    w.validate()?;
    Ok(w.as_array()
        .iter()
        .filter(|&&p| p > 0)
        .map(|&p| {
            let q = f64::from(p) / 100.0;
            -q * q.ln()
        })
        .sum::<f64>()
        .max(0.0))
}

fn check_len(t: &[ProbeTranscript], golds: &[Verdict]) -> Result<()> {
    if t.len() == golds.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            left: t.len(),
            right: golds.len(),
        })
    }
}

fn flip_rate(t: &[ProbeTranscript], golds: &[Verdict], step1_right: bool) -> Result<Option<f64>> {
    check_len(t, golds)?;
    let (mut den, mut num) = (0usize, 0usize);
    for (tr, &g) in t.iter().zip(golds) {
        if (tr.step1_verdict == g) == step1_right {
            den += 1;
            if (tr.step3_verdict == g) != step1_right {
                num += 1;
            }
        }
    }
    Ok((den > 0).then(|| num as f64 / den as f64))
}

/// Self-correction rate; `None` when no step-1 verdict was wrong.
pub fn scr(t: &[ProbeTranscript], golds: &[Verdict]) -> Result<Option<f64>> {
    flip_rate(t, golds, false)
}

/// False-confession rate; `None` when no step-1 verdict was right.
pub fn fcr(t: &[ProbeTranscript], golds: &[Verdict]) -> Result<Option<f64>> {
    flip_rate(t, golds, true)
}

/// Cases that confess an error yet keep the same wrong verdict.
pub fn logic_collapse_count(t: &[ProbeTranscript], golds: &[Verdict]) -> Result<usize> {
    check_len(t, golds)?;
    Ok(t.iter()
        .zip(golds)
        .filter(|(tr, &g)| {
            tr.confessed_error && tr.step3_verdict == tr.step1_verdict && tr.step3_verdict != g
        })
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Mode;
    use proptest::prelude::*;

    fn tr(step1: Verdict, wagers: Wagers, step3: Verdict, confessed: bool) -> ProbeTranscript {
        ProbeTranscript {
            case_id: "x".into(),
            mode: Mode::Text,
            step1_verdict: step1,
            step2_wagers: wagers,
            step3_verdict: step3,
            confessed_error: confessed,
            rationale_texts: vec![],
        }
    }

    const P: CoreParams = CoreParams {
        beta: 0.5,
        gamma: 1.0,
    };

    #[test]
    fn core_examples() {
        let u = Verdict::Unknown;
        let full_reserve = tr(u, Wagers::all_reserve(), u, false);
        assert_eq!(
            core_score(&full_reserve, u, LogicType::DUnknowable, &P).unwrap(),
            1.0
        );

        let committed = tr(u, Wagers::split(Verdict::True, 0), Verdict::True, false);
        assert_eq!(
            core_score(&committed, u, LogicType::DUnknowable, &P).unwrap(),
            -1.0
        );

        let perfect = tr(
            Verdict::False,
            Wagers::split(Verdict::False, 0),
            Verdict::False,
            false,
        );
        for beta in [0.0, 0.3, 1.0] {
            let p = CoreParams::new(beta, 1.0).unwrap();
            assert_eq!(
                core_score(&perfect, Verdict::False, LogicType::AStandard, &p).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn winner_is_the_gold_option() {
        // Right verdict, but the wager sits on the wrong option.
        let w = Wagers {
            on_false: 70,
            on_true: 30,
            ..Default::default()
        };
        let t = tr(Verdict::True, w, Verdict::True, false);
        let s = core_score(&t, Verdict::True, LogicType::BInversion, &P).unwrap();
        assert!((s - (0.5 + 0.5 * 0.3)).abs() < 1e-12);
    }

    #[test]
    fn bad_wager_sum() {
        let w = Wagers {
            on_true: 99,
            ..Default::default()
        };
        let t = tr(Verdict::True, w, Verdict::True, false);
        assert!(matches!(
            core_score(&t, Verdict::True, LogicType::AStandard, &P),
            Err(Error::WagerSum(99))
        ));
        assert!(entropy_of_wagers(&w).is_err());
    }

    #[test]
    fn msa_examples() {
        let (s_text, s_vis) = LogicType::BInversion.signal_vectors();
        assert_eq!(
            msa_classify(Verdict::True, s_text, s_vis),
            MsaClass::VisionDominant
        );
        assert_eq!(
            msa_classify(Verdict::False, s_text, s_vis),
            MsaClass::TextDominant
        );
        assert_eq!(
            msa_classify(Verdict::Unknown, s_text, s_vis),
            MsaClass::Confusion
        );
        assert_eq!(
            msa_classify(Verdict::False, Verdict::False, Verdict::False),
            MsaClass::TextDominant
        );
    }

    #[test]
    fn relative_uncertainty_examples() {
        assert_eq!(relative_uncertainty(2.0, 2.0).unwrap().value, 0.0);
        assert_eq!(relative_uncertainty(3.0, 1.0).unwrap().value, 1.0);
        assert_eq!(relative_uncertainty(1.0, 3.0).unwrap().value, -1.0);
        let z = relative_uncertainty(0.0, 0.0).unwrap();
        assert!(z.both_zero && z.value == 0.0);
        assert!(relative_uncertainty(-1.0, 0.0).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy_of_wagers(&Wagers::all_reserve()).unwrap(), 0.0);
        let uniform = Wagers {
            on_true: 25,
            on_false: 25,
            on_unknown: 25,
            reserve: 25,
        };
        assert!((entropy_of_wagers(&uniform).unwrap() - 4f64.ln()).abs() < 1e-12);
        let half = Wagers {
            on_true: 50,
            on_false: 50,
            ..Default::default()
        };
        assert!((entropy_of_wagers(&half).unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn flip_rates() {
        let (t, f) = (Verdict::True, Verdict::False);
        let w = Wagers::all_reserve();
        // 10 initial wrongs, 4 corrected.
        let mut set: Vec<ProbeTranscript> = (0..10)
            .map(|i| tr(f, w, if i < 4 { t } else { f }, false))
            .collect();
        let golds = vec![t; 10];
        assert_eq!(scr(&set, &golds).unwrap(), Some(0.4));
        assert_eq!(fcr(&set, &golds).unwrap(), None);

        for x in &mut set {
            x.step3_verdict = t;
        }
        assert_eq!(scr(&set, &golds).unwrap(), Some(1.0));

        let right: Vec<ProbeTranscript> = (0..10)
            .map(|i| tr(t, w, if i < 5 { f } else { t }, true))
            .collect();
        assert_eq!(fcr(&right, &golds).unwrap(), Some(0.5));
        assert_eq!(scr(&right, &golds).unwrap(), None);
        let steady: Vec<ProbeTranscript> = (0..3).map(|_| tr(t, w, t, false)).collect();
        assert_eq!(fcr(&steady, &golds[..3]).unwrap(), Some(0.0));

        assert!(matches!(
            scr(&right, &golds[..2]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn collapse_quadrant() {
        let (t, f) = (Verdict::True, Verdict::False);
        let w = Wagers::all_reserve();
        let set = [
            tr(f, w, f, true),
            tr(f, w, t, true),
            tr(f, w, f, false),
            tr(t, w, t, true),
        ];
        assert_eq!(logic_collapse_count(&set, &[t; 4]).unwrap(), 1);
    }

    fn verdict() -> impl Strategy<Value = Verdict> {
        prop_oneof![
            Just(Verdict::True),
            Just(Verdict::False),
            Just(Verdict::Unknown)
        ]
    }

    fn wagers() -> impl Strategy<Value = Wagers> {
        (0u32..=100, 0u32..=100, 0u32..=100).prop_map(|(a, b, c)| {
            let mut cuts = [a, b, c];
            cuts.sort_unstable();
            Wagers {
                on_true: cuts[0],
                on_false: cuts[1] - cuts[0],
                on_unknown: cuts[2] - cuts[1],
                reserve: 100 - cuts[2],
            }
        })
    }

    fn logic_type() -> impl Strategy<Value = LogicType> {
        prop::sample::select(LogicType::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn core_ranges(w in wagers(), y in verdict(), g in verdict(), lt in logic_type(),
                       beta in 0.0f64..=1.0, gamma in 0.0f64..5.0) {
            let p = CoreParams::new(beta, gamma).unwrap();
            let s = core_score(&tr(y, w, y, false), g, lt, &p).unwrap();
            if lt.is_deterministic() {
                prop_assert!((0.0..=1.0).contains(&s));
            } else {
                prop_assert!(s >= -gamma - 1e-12 && s <= 1.0);
            }
        }

        #[test]
        fn core_monotone_in_winner_and_reserve(y in verdict(), g in verdict(), lt in logic_type(), k in 0u32..100) {
            // Move one point from a non-scoring slot onto the scored one.
            let (base, more) = if lt.is_deterministic() {
                let base = Wagers::split(g, 100 - k);
                (base, Wagers::split(g, 99 - k))
            } else {
                (Wagers::split(Verdict::True, k), Wagers::split(Verdict::True, k + 1))
            };
            let a = core_score(&tr(y, base, y, false), g, lt, &P).unwrap();
            let b = core_score(&tr(y, more, y, false), g, lt, &P).unwrap();
            prop_assert!(b >= a);
        }

        #[test]
        fn msa_total(a in verdict(), b in verdict(), c in verdict()) {
            let _ = msa_classify(a, b, c);
        }

        #[test]
        fn relative_uncertainty_antisymmetric(a in 0.0f64..10.0, b in 0.0f64..10.0) {
            let x = relative_uncertainty(a, b).unwrap().value;
            let y = relative_uncertainty(b, a).unwrap().value;
            prop_assert!((x + y).abs() < 1e-12);
        }

        #[test]
        fn flips_partition(rows in prop::collection::vec((verdict(), verdict(), verdict()), 0..40)) {
            let t: Vec<ProbeTranscript> = rows.iter().map(|(s1, s3, _)| tr(*s1, Wagers::all_reserve(), *s3, false)).collect();
            let g: Vec<Verdict> = rows.iter().map(|r| r.2).collect();
            let wrong = rows.iter().filter(|(s1, _, g)| s1 != g).count();
            let right = rows.len() - wrong;
            prop_assert_eq!(scr(&t, &g).unwrap().is_some(), wrong > 0);
            prop_assert_eq!(fcr(&t, &g).unwrap().is_some(), right > 0);
        }
    }
}
