//! Score hand-written probe transcripts: CoRe, modality alignment, wager
//! entropy and the self-correction rates.

use mma::bench::{LogicType, Mode, Verdict};
use mma::probe::{
    core_score, entropy_of_wagers, fcr, logic_collapse_count, msa_classify, relative_uncertainty,
    scr, CoreParams, ProbeTranscript, Wagers,
};

fn transcript(step1: Verdict, wagers: Wagers, step3: Verdict) -> ProbeTranscript {
    ProbeTranscript {
        case_id: "demo".into(),
        mode: Mode::Text,
        step1_verdict: step1,
        step2_wagers: wagers,
        step3_verdict: step3,
        confessed_error: step1 != step3,
        rationale_texts: Vec::new(),
    }
}

fn main() -> mma::Result<()> {
    let p = CoreParams::default();
    let cases = [
        (
            LogicType::AStandard,
            transcript(
                Verdict::False,
                Wagers::split(Verdict::False, 20),
                Verdict::False,
            ),
        ),
        (
            LogicType::BInversion,
            transcript(
                Verdict::False,
                Wagers::split(Verdict::False, 30),
                Verdict::True,
            ),
        ),
        (
            LogicType::CAmbiguity,
            transcript(
                Verdict::True,
                Wagers::split(Verdict::True, 50),
                Verdict::True,
            ),
        ),
        (
            LogicType::DUnknowable,
            transcript(Verdict::Unknown, Wagers::all_reserve(), Verdict::Unknown),
        ),
    ];
    let mut golds = Vec::new();
    let mut ts = Vec::new();
    for (t, tr) in &cases {
        let gold = t.ground_truth();
        let (s_text, s_vis) = t.signal_vectors();
        println!(
            "{t}: CoRe {:+.3}  MSA {:?}  entropy {:.3} nats",
            core_score(tr, gold, *t, &p)?,
            msa_classify(tr.step3_verdict, s_text, s_vis),
            entropy_of_wagers(&tr.step2_wagers)?
        );
        golds.push(gold);
        ts.push(tr.clone());
    }
    println!(
        "SCR {:?}  FCR {:?}  logic collapse {}",
        scr(&ts, &golds)?,
        fcr(&ts, &golds)?,
        logic_collapse_count(&ts, &golds)?
    );
    println!("relative uncertainty {:?}", relative_uncertainty(0.9, 0.6)?);
    Ok(())
}
