//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use mma::agent::{run_reference_agent, AgentConfig};
use mma::bench::{
    generate_suite, validate_case, write_suite, Ambiguity, BenchConfig, LogicType, Mode,
    TypeCounts, Verdict,
};
use mma::confidence::{
    decay, score_all, temporal_score, ConfidenceWeights, ConsensusConfig, EdgeWeight,
    TemporalConfig, Variant,
};
use mma::memory::{MemoryItem, MemoryStore, Modality, SourceRegistry};
use mma::probe::{core_score, fcr, logic_collapse_count, scr, CoreParams, ProbeTranscript, Wagers};
use mma::selective::{selective_score, stability, utility, Regime, SelectiveSummary};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn err(e: mma::Error) -> String {
    e.to_string()
}

fn utility_reconstruction() -> Outcome {
    let start = Instant::now();
    let s =
        SelectiveSummary::from_counts(Regime::Coverage, 1166.0, 298.0, 0.0, 78.0).map_err(err)?;
    check(s.n == 1542.0, format!("N = {}", s.n))?;
    let u1 = utility(&s, 1.0, 0.2).map_err(err)?;
    let u2 = utility(&s, 2.0, 0.5).map_err(err)?;
    check((u1 - 883.6).abs() <= 0.5, format!("utility(1, 0.2) = {u1}"))?;
    check((u2 - 609.0).abs() <= 0.5, format!("utility(2, 0.5) = {u2}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{u1:.1} and {u2:.1}"))
}

fn selective_reconstruction() -> Outcome {
    let score = |raw: f64, wrong_abstain: f64| -> Result<f64, String> {
        let n = 500.0;
        let ac = raw * n;
        let s = SelectiveSummary::from_counts(
            Regime::LabelAbstain,
            ac,
            n - ac - wrong_abstain,
            0.0,
            wrong_abstain,
        )
        .map_err(err)?;
        selective_score(&s, 0.2).map_err(err)
    };
    let mma = score(0.5993, 122.6)?;
    let base = score(0.5987, 120.3)?;
    check((mma - 0.6484).abs() <= 0.002, format!("selective {mma}"))?;
    check(
        (base - 0.6468).abs() <= 0.002,
        format!("baseline selective {base}"),
    )?;
    Ok(format!("{mma:.4} and {base:.4}"))
}

fn temporal_exactness() -> Outcome {
    let half = 30.0 * 86_400.0;
    let now = 10_000_000_000u64;
    let at = |dt: f64| -> Result<f64, String> {
        let item = MemoryItem {
            id: "x".into(),
            content: String::new(),
            source: "s".into(),
            timestamp: now - dt as u64,
            modality: Modality::Text,
            embedding: vec![1.0],
        };
        Ok(temporal_score(&item, &TemporalConfig::new(half, now).map_err(err)?).value)
    };
    for (dt, want) in [(0.0, 1.0), (half, 0.5), (2.0 * half, 0.25)] {
        let got = at(dt)?;
        check((got - want).abs() <= 1e-12, format!("T({dt}) = {got}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let a = rng.random_range(0.0..5.0 * half);
        let b = rng.random_range(0.0..5.0 * half);
        let lhs = decay(a + b, half);
        let rhs = decay(a, half) * decay(b, half);
        check(
            (lhs - rhs).abs() <= 1e-12,
            format!("T({a}+{b}) = {lhs} but product {rhs}"),
        )?;
    }
    Ok("T(0), T(h), T(2h) exact; 1000 products".into())
}

/// Straight-line transcription of the scoring equations, sharing nothing
/// with the library beyond the input types.
mod oracle {
    use super::*;

    pub struct Setup {
        pub priors: BTreeMap<String, f64>,
        pub default_prior: f64,
        pub ws: f64,
        pub wt: f64,
        pub wc: f64,
        pub use_s: bool,
        pub use_t: bool,
        pub use_c: bool,
        pub half_life: f64,
        pub now: u64,
        pub k: usize,
        pub kn: usize,
        pub abs_edges: bool,
    }

    pub struct Row {
        pub id: String,
        pub source: f64,
        pub time: f64,
        pub consensus: f64,
        pub combined: f64,
    }

    fn cos(a: &[f64], b: &[f64]) -> f64 {
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        (dot / (na * nb)).clamp(-1.0, 1.0)
    }

    pub fn score(items: &[MemoryItem], query: &[f64], s: &Setup) -> Vec<Row> {
        let mut ranked: Vec<(f64, &MemoryItem)> = items
            .iter()
            .map(|m| (cos(query, &m.embedding), m))
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.id.cmp(&b.1.id)));
        ranked.truncate(s.k);
        let top: Vec<&MemoryItem> = ranked.iter().map(|r| r.1).collect();

        let src: Vec<f64> = top
            .iter()
            .map(|m| *s.priors.get(&m.source).unwrap_or(&s.default_prior))
            .collect();
        let tim: Vec<f64> = top
            .iter()
            .map(|m| {
                let dt = s.now.saturating_sub(m.timestamp) as f64;
                (-(2f64.ln()) / s.half_life * dt).exp()
            })
            .collect();
        let base: Vec<f64> = (0..top.len())
            .map(|i| {
                let mut num = 0.0;
                let mut den = 0.0;
                if s.use_s {
                    num += s.ws * src[i];
                    den += s.ws;
                }
                if s.use_t {
                    num += s.wt * tim[i];
                    den += s.wt;
                }
                if den > 0.0 {
                    (num / den).clamp(0.0, 1.0)
                } else {
                    1.0
                }
            })
            .collect();

        (0..top.len())
            .map(|i| {
                let mut others: Vec<(f64, usize)> = (0..top.len())
                    .filter(|&j| j != i)
                    .map(|j| (cos(&top[i].embedding, &top[j].embedding), j))
                    .collect();
                others.sort_by(|a, b| {
                    b.0.abs()
                        .total_cmp(&a.0.abs())
                        .then(top[a.1].id.cmp(&top[b.1].id))
                });
                others.truncate(s.kn);
                let mut num = 0.0;
                let mut den = 0.0;
                for (sigma, j) in &others {
                    let w = if s.abs_edges { sigma.abs() } else { 1.0 };
                    num += w * base[*j] * sigma;
                    den += w;
                }
                let has = den > 0.0;
                let con = if has { num / den } else { 0.0 };
                let mut num = 0.0;
                let mut den = 0.0;
                if s.use_s {
                    num += s.ws * src[i];
                    den += s.ws;
                }
                if s.use_t {
                    num += s.wt * tim[i];
                    den += s.wt;
                }
                if s.use_c && has {
                    num += s.wc * con;
                    den += s.wc;
                }
                Row {
                    id: top[i].id.as_str().to_owned(),
                    source: src[i],
                    time: tim[i],
                    consensus: con,
                    combined: (num / den).clamp(0.0, 1.0),
                }
            })
            .collect()
    }
}

fn consensus_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut worst: f64 = 0.0;
    let variants = [Variant::Full, Variant::St, Variant::Tc, Variant::Cs];
    for round in 0..100 {
        let n = rng.random_range(1..=50);
        let dim = rng.random_range(2..=16);
        let now = 1_800_000_000u64;
        let sources = ["a", "b", "c", "d", "e"];
        let default_prior = rng.random_range(0.0..=1.0);
        let mut registry = SourceRegistry::new(default_prior).map_err(err)?;
        let mut priors = BTreeMap::new();
        for s in &sources[..4] {
            let p = rng.random_range(0.0..=1.0);
            registry.set(*s, p).map_err(err)?;
            priors.insert(s.to_string(), p);
        }
        let mut store = MemoryStore::new(dim, registry).map_err(err)?;
        let mut items = Vec::new();
        let random_vec = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            loop {
                let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                if v.iter().any(|x| x.abs() > 1e-3) {
                    return v;
                }
            }
        };
        for i in 0..n {
            let item = MemoryItem {
                id: format!("m{i:02}").as_str().into(),
                content: format!("item {i}"),
                source: sources[rng.random_range(0..sources.len())].to_owned(),
                timestamp: now - rng.random_range(0..200 * 86_400)
                    + rng.random_range(0..2) * 86_400,
                modality: Modality::Text,
                embedding: random_vec(&mut rng),
            };
            store.insert(item.clone()).map_err(err)?;
            items.push(item);
        }
        let query = random_vec(&mut rng);
        let variant = variants[round % variants.len()];
        let mask = variant.mask();
        let (ws, wt, wc) = (
            rng.random_range(0.1..3.0),
            rng.random_range(0.1..3.0),
            rng.random_range(0.1..3.0),
        );
        let setup = oracle::Setup {
            priors,
            default_prior,
            ws,
            wt,
            wc,
            use_s: mask.contains(mma::confidence::Component::Source),
            use_t: mask.contains(mma::confidence::Component::Time),
            use_c: mask.contains(mma::confidence::Component::Consensus),
            half_life: rng.random_range(1.0..90.0) * 86_400.0,
            now,
            k: rng.random_range(1..=n),
            kn: rng.random_range(1..=8),
            abs_edges: rng.random_bool(0.5),
        };
        let weights = ConfidenceWeights::new(ws, wt, wc, mask).map_err(err)?;
        let temporal = TemporalConfig::new(setup.half_life, now).map_err(err)?;
        let consensus = ConsensusConfig {
            neighbors: setup.kn,
            passes: 1,
            edge_weight: if setup.abs_edges {
                EdgeWeight::AbsSimilarity
            } else {
                EdgeWeight::Uniform
            },
        };
        let got =
            score_all(&store, &query, setup.k, &weights, &temporal, &consensus).map_err(err)?;
        let want = oracle::score(&items, &query, &setup);
        check(
            got.len() == want.len(),
            format!("round {round}: {} vs {} reports", got.len(), want.len()),
        )?;
        for (g, w) in got.iter().zip(&want) {
            check(
                g.id.as_str() == w.id,
                format!("round {round}: id {} vs {}", g.id.as_str(), w.id),
            )?;
            for d in [
                g.source - w.source,
                g.time - w.time,
                g.consensus - w.consensus,
                g.combined - w.combined,
            ] {
                worst = worst.max(d.abs());
            }
        }
    }
    check(worst <= 1e-9, format!("max deviation {worst:e}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("100 stores, max deviation {worst:.1e}"))
}

fn core_oracle(t: &ProbeTranscript, gold: Verdict, lt: LogicType, beta: f64, gamma: f64) -> f64 {
    let w = &t.step2_wagers;
    let on_gold = match gold {
        Verdict::True => w.on_true,
        Verdict::False => w.on_false,
        Verdict::Unknown => w.on_unknown,
    } as f64;
    match lt {
        LogicType::AStandard | LogicType::BInversion => {
            let hit = if t.step3_verdict == gold { 1.0 } else { 0.0 };
            beta * hit + (1.0 - beta) * on_gold / 100.0
        }
        LogicType::CAmbiguity | LogicType::DUnknowable => {
            let committed = if t.step3_verdict != Verdict::Unknown {
                1.0
            } else {
                0.0
            };
            w.reserve as f64 / 100.0 - gamma * committed
        }
    }
}

fn core_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let verdicts = [Verdict::True, Verdict::False, Verdict::Unknown];
    for i in 0..10_000 {
        let mut cuts = [
            rng.random_range(0..=100u32),
            rng.random_range(0..=100),
            rng.random_range(0..=100),
        ];
        cuts.sort_unstable();
        let wagers = Wagers {
            on_true: cuts[0],
            on_false: cuts[1] - cuts[0],
            on_unknown: cuts[2] - cuts[1],
            reserve: 100 - cuts[2],
        };
        let lt = LogicType::ALL[rng.random_range(0..4)];
        let t = ProbeTranscript {
            case_id: format!("c{i}"),
            mode: Mode::Text,
            step1_verdict: verdicts[rng.random_range(0..3)],
            step2_wagers: wagers,
            step3_verdict: verdicts[rng.random_range(0..3)],
            confessed_error: rng.random_bool(0.5),
            rationale_texts: Vec::new(),
        };
        let params = CoreParams::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..=3.0))
            .map_err(err)?;
        let gold = lt.ground_truth();
        let s = core_score(&t, gold, lt, &params).map_err(err)?;
        let (lo, hi) = if lt.is_deterministic() {
            (0.0, 1.0)
        } else {
            (-params.gamma, 1.0)
        };
        check(
            lo <= s && s <= hi,
            format!("transcript {i}: {s} outside [{lo}, {hi}]"),
        )?;
        let o = core_oracle(&t, gold, lt, params.beta, params.gamma);
        check(
            (s - o).abs() <= 1e-12,
            format!("transcript {i}: {s} vs oracle {o}"),
        )?;
    }
    let d = ProbeTranscript {
        case_id: "d".into(),
        mode: Mode::Vision,
        step1_verdict: Verdict::Unknown,
        step2_wagers: Wagers::all_reserve(),
        step3_verdict: Verdict::Unknown,
        confessed_error: false,
        rationale_texts: Vec::new(),
    };
    let anchor = core_score(
        &d,
        Verdict::Unknown,
        LogicType::DUnknowable,
        &CoreParams::default(),
    )
    .map_err(err)?;
    check(
        anchor == 1.0,
        format!("full-reserve UNKNOWN on type D scores {anchor}"),
    )?;
    Ok("10^4 transcripts in range; type D anchor 1.00".into())
}

fn generator_determinism() -> Outcome {
    let start = Instant::now();
    let counts = TypeCounts {
        a: 1,
        b: 1,
        c: 1,
        d: 1,
    };
    let cfg = BenchConfig::default();
    for seed in [7u64, 42, 2024] {
        let first = generate_suite(seed, counts, &cfg).map_err(err)?;
        let second = generate_suite(seed, counts, &cfg).map_err(err)?;
        let (da, db) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let fa = write_suite(da.path(), &first).map_err(err)?;
        let fb = write_suite(db.path(), &second).map_err(err)?;
        for (a, b) in fa
            .cases
            .iter()
            .chain([&fa.manifest, &fa.qa])
            .zip(fb.cases.iter().chain([&fb.manifest, &fb.qa]))
        {
            check(
                std::fs::read(a).unwrap() == std::fs::read(b).unwrap(),
                format!("seed {seed}: {} differs", a.display()),
            )?;
        }
        for case in &first {
            let v = validate_case(case);
            check(
                v.is_empty(),
                format!(
                    "{}: {} violation(s), first {:?}",
                    case.case_id,
                    v.len(),
                    v.first()
                ),
            )?;
            let evidence: Vec<_> = case.evidence().collect();
            match case.logic_type {
                LogicType::BInversion => check(
                    !evidence.is_empty() && evidence.iter().all(|(s, _)| s.index == 8),
                    format!("{}: trap not in session 8", case.case_id),
                )?,
                LogicType::CAmbiguity => check(
                    !evidence.is_empty()
                        && evidence
                            .iter()
                            .all(|(_, e)| e.visual_descriptor.ambiguity == Ambiguity::Vague),
                    format!("{}: non-vague evidence", case.case_id),
                )?,
                _ => {}
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok("3 seeds x 4 types byte-identical and valid".into())
}

fn directional_ablation() -> Outcome {
    let bench = BenchConfig::default();
    let b_suite = generate_suite(
        7,
        TypeCounts {
            a: 0,
            b: 17,
            c: 0,
            d: 0,
        },
        &bench,
    )
    .map_err(err)?;
    let answered = |variant: Variant| -> Result<usize, String> {
        let cfg = AgentConfig::default().with_variant(variant);
        let mut n = 0;
        for case in &b_suite {
            let (t, _) = run_reference_agent(case, &cfg).map_err(err)?;
            n += usize::from(t.step3_verdict != Verdict::Unknown);
        }
        Ok(n)
    };
    let (full, tc) = (answered(Variant::Full)?, answered(Variant::Tc)?);
    check(full > tc, format!("full answered {full}/17, tc {tc}/17"))?;

    let d_suite = generate_suite(
        7,
        TypeCounts {
            a: 0,
            b: 0,
            c: 0,
            d: 17,
        },
        &bench,
    )
    .map_err(err)?;
    let mean_d = |variant: Variant| -> Result<f64, String> {
        let cfg = AgentConfig::default()
            .with_variant(variant)
            .with_mode(Mode::Vision);
        let mut sum = 0.0;
        for case in &d_suite {
            let (t, _) = run_reference_agent(case, &cfg).map_err(err)?;
            sum += core_score(
                &t,
                case.ground_truth,
                case.logic_type,
                &CoreParams::default(),
            )
            .map_err(err)?;
        }
        Ok(sum / d_suite.len() as f64)
    };
    let (st, full_d) = (mean_d(Variant::St)?, mean_d(Variant::Full)?);
    check(
        st <= full_d,
        format!("type D VISION: st {st:.3} > full {full_d:.3}"),
    )?;
    Ok(format!(
        "answered full {full}/17 vs tc {tc}/17; type D st {st:.2} <= full {full_d:.2}"
    ))
}

fn flip_rates() -> Outcome {
    use Verdict::{False as F, True as T, Unknown as U};
    // (gold, step1, step3, confessed)
    let rows: [(Verdict, Verdict, Verdict, bool); 20] = [
        // step 1 wrong, corrected: 3
        (T, F, T, true),
        (F, T, F, true),
        (U, T, U, true),
        // step 1 wrong, moved to another wrong answer
        (T, F, U, true),
        // step 1 wrong, unchanged and confessed: logic collapse
        (T, F, F, true),
        (F, U, U, true),
        // step 1 wrong, unchanged, not confessed
        (T, U, U, false),
        (F, T, T, false),
        // step 1 right, abandoned: 3
        (T, T, F, true),
        (F, F, U, true),
        (U, U, T, true),
        // step 1 right, kept
        (T, T, T, false),
        (T, T, T, false),
        (F, F, F, false),
        (F, F, F, true),
        (U, U, U, false),
        (U, U, U, false),
        (T, T, T, false),
        (F, F, F, false),
        (U, U, U, true),
    ];
    let (ts, golds): (Vec<ProbeTranscript>, Vec<Verdict>) = rows
        .iter()
        .enumerate()
        .map(|(i, &(g, s1, s3, c))| {
            (
                ProbeTranscript {
                    case_id: format!("t{i:02}"),
                    mode: Mode::Text,
                    step1_verdict: s1,
                    step2_wagers: Wagers::all_reserve(),
                    step3_verdict: s3,
                    confessed_error: c,
                    rationale_texts: Vec::new(),
                },
                g,
            )
        })
        .unzip();
    let s = scr(&ts, &golds).map_err(err)?;
    let f = fcr(&ts, &golds).map_err(err)?;
    let c = logic_collapse_count(&ts, &golds).map_err(err)?;
    check(s == Some(3.0 / 8.0), format!("scr {s:?}, expected 3/8"))?;
    check(f == Some(3.0 / 12.0), format!("fcr {f:?}, expected 3/12"))?;
    check(c == 2, format!("logic collapse {c}, expected 2"))?;
    Ok("scr 3/8, fcr 3/12, collapse 2".into())
}

fn stability_convention() -> Outcome {
    let s = stability(&[58.31, 59.93, 61.55]).map_err(err)?;
    check((s.std - 1.62).abs() <= 0.01, format!("std {}", s.std))?;
    Ok(format!("std {:.2}", s.std))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("utility reconstruction", utility_reconstruction),
        ("selective-score reconstruction", selective_reconstruction),
        ("temporal decay exactness", temporal_exactness),
        ("consensus oracle equivalence", consensus_oracle),
        ("CoRe bounds and type D anchor", core_bounds),
        ("generator determinism and schema", generator_determinism),
        ("end-to-end directional ablation", directional_ablation),
        ("SCR/FCR correctness", flip_rates),
        ("stability convention", stability_convention),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
