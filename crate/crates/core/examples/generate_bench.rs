//! Generate a small belief-dynamics suite, validate it and print one case.
//!
//! ```text
//! cargo run --example generate_bench -- 7 /tmp/suite
//! ```

use std::path::PathBuf;

use mma::bench::{generate_suite, validate_case, write_suite, BenchConfig, Mode, TypeCounts};

fn main() -> mma::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let out: Option<PathBuf> = args.next().map(PathBuf::from);

    let counts: TypeCounts = "A:1,B:1,C:1,D:1".parse()?;
    let cases = generate_suite(seed, counts, &BenchConfig::default())?;
    for c in &cases {
        let violations = validate_case(c);
        println!(
            "{}  type {}  gold {}  sessions {}  violations {}",
            c.case_id,
            c.logic_type,
            c.ground_truth,
            c.sessions.len(),
            violations.len()
        );
    }

    let b = &cases[1];
    println!("\n{} asks: {}", b.case_id, b.target_fact.proposition());
    for item in b
        .render(Mode::Vision)
        .iter()
        .filter(|i| i.id.starts_with("s08") || i.id.starts_with("s10"))
    {
        let who = if item.is_evidence {
            "evidence"
        } else {
            item.speaker.source_id()
        };
        println!("  [{}] {:<8} {}", item.id, who, item.text);
    }

    if let Some(dir) = out {
        let files = write_suite(&dir, &cases)?;
        println!(
            "\nwrote {} cases and {}",
            files.cases.len(),
            files.manifest.display()
        );
    }
    Ok(())
}
