//! Selective-prediction metrics from outcome counts and from records.

use mma::selective::{
    alpha_sweep, risk_coverage, stability, utility, EvalRecord, Prediction, Regime,
    SelectiveSummary,
};

fn main() -> mma::Result<()> {
    // 1166 correct, 298 wrong, 78 abstentions.
    let coverage = SelectiveSummary::from_counts(Regime::Coverage, 1166.0, 298.0, 0.0, 78.0)?;
    println!("utility (1, 0.2) = {:.1}", utility(&coverage, 1.0, 0.2)?);
    println!("utility (2, 0.5) = {:.1}", utility(&coverage, 2.0, 0.5)?);

    let labelled = SelectiveSummary::from_counts(Regime::LabelAbstain, 299.65, 77.75, 0.0, 122.6)?;
    for (alpha, s) in alpha_sweep(&labelled, &[0.0, 0.1, 0.2, 0.3, 0.4, 0.5])? {
        println!("alpha {alpha:.1}: selective {s:.4}");
    }

    let records: Vec<EvalRecord> = [
        (0.9, true),
        (0.8, true),
        (0.7, false),
        (0.6, true),
        (0.3, false),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, (c, ok))| EvalRecord {
        question_id: format!("q{i}"),
        gold: "yes".into(),
        prediction: Prediction::Answer(if ok { "yes" } else { "no" }.into()),
        regime: Regime::Coverage,
        confidence: Some(c),
    })
    .collect();
    for p in risk_coverage(&records) {
        println!(
            "threshold {:?}: coverage {:.2} risk {:?}",
            p.threshold, p.coverage, p.risk
        );
    }

    let s = stability(&[58.31, 59.93, 61.55])?;
    println!("accuracy {:.2} ± {:.2}", s.mean, s.std);
    Ok(())
}
