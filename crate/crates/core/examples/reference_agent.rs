//! Run the reference agent on one case of each logic type under two
//! component masks and score its probe transcripts.

use mma::agent::{run_reference_agent, AgentConfig};
use mma::bench::{generate_case, BenchConfig, LogicType, Mode};
use mma::confidence::Variant;
use mma::probe::{core_score, CoreParams};

fn main() -> mma::Result<()> {
    let bench = BenchConfig::default();
    let params = CoreParams::default();
    for variant in [Variant::Full, Variant::Tc, Variant::St] {
        let cfg = AgentConfig::default()
            .with_variant(variant)
            .with_mode(Mode::Vision);
        println!("mask {variant}:");
        for t in LogicType::ALL {
            let case = generate_case(42, t, &bench)?;
            let (transcript, audit) = run_reference_agent(&case, &cfg)?;
            let score = core_score(&transcript, case.ground_truth, t, &params)?;
            println!(
                "  {t}  gold {:<7} said {:<7} reserve {:>3}  CoRe {:+.2}  candidates {}",
                case.ground_truth.to_string(),
                transcript.step3_verdict.to_string(),
                transcript.step2_wagers.reserve,
                score,
                audit.steps[0].candidates.len()
            );
        }
    }
    Ok(())
}
