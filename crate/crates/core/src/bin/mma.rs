//! `mma`: generate suites, run the reference agent, score transcripts and
//! compute selective metrics.
//!
//! Exit codes: 0 success, 1 input error, 2 validation failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mma::bench::{Mode, TypeCounts};
use mma::confidence::Variant;
use mma::pipeline::{self, CONFIG_DIR_ENV};
use mma::probe::{CoreParams, VerdictStep};
use mma::selective::{EvalParams, Regime, StdConvention};

#[derive(Parser)]
#[command(
    name = "mma",
    version,
    about = "Confidence-aware memory benchmark tools"
)]
struct Cli {
    /// More log output (repeat for debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark suite.
    Gen {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Cases per logic type, e.g. `A:5,B:5,C:5,D:5`.
        #[arg(long, default_value = "A:1,B:1,C:1,D:1")]
        types: TypeCounts,
        /// Generator config (TOML); defaults to `$MMA_CONFIG_DIR/bench.toml`.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every case of a suite against the generator invariants.
    Validate {
        #[arg(long)]
        suite: PathBuf,
    },
    /// Run the reference agent over a suite.
    Run {
        #[arg(long)]
        suite: PathBuf,
        /// Agent config (TOML); defaults to `$MMA_CONFIG_DIR/agent.toml`.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Confidence components to keep: full, st, tc or cs.
        #[arg(long)]
        mask: Option<Variant>,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score probe transcripts against a suite.
    Score {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        transcripts: PathBuf,
        /// Layer-1 answers (JSONL) to grade alongside the probe.
        #[arg(long)]
        answers: Option<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Verdict graded by the accuracy columns: step1 or step3.
        #[arg(long, default_value = "step3")]
        verdict_step: VerdictStep,
        #[arg(long)]
        out: PathBuf,
    },
    /// Selective-prediction metrics over answer/abstain records.
    Eval {
        /// One JSONL file per run (e.g. per seed).
        #[arg(long, required = true, num_args = 1..)]
        records: Vec<PathBuf>,
        /// Override the regime stored in the records.
        #[arg(long)]
        regime: Option<Regime>,
        #[arg(long, value_delimiter = ',', default_value = "0.2")]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0.2)]
        r: f64,
        #[arg(long, value_enum, default_value_t = StdArg::Sample)]
        std: StdArg,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Text,
    Vision,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeArg::Text => vec![Mode::Text],
            ModeArg::Vision => vec![Mode::Vision],
            ModeArg::Both => vec![Mode::Text, Mode::Vision],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StdArg {
    Sample,
    Population,
}

fn execute(command: Command) -> mma::Result<()> {
    match command {
        Command::Gen {
            seed,
            types,
            config,
            out,
        } => {
            let cfg = pipeline::load_bench_config(config.as_deref())?;
            let files = pipeline::cmd_gen(seed, types, &cfg, &out)?;
            println!(
                "{} cases, manifest {}",
                files.cases.len(),
                files.manifest.display()
            );
        }
        Command::Validate { suite } => {
            let n = pipeline::cmd_validate(&suite)?;
            println!("{n} cases valid");
        }
        Command::Run {
            suite,
            config,
            mask,
            mode,
            out,
        } => {
            let mut cfg = pipeline::load_agent_config(config.as_deref())?;
            if let Some(v) = mask {
                cfg = cfg.with_variant(v);
            }
            let files = pipeline::cmd_run(&suite, &cfg, &mode.modes(), &out)?;
            println!("transcripts {}", files.transcripts.display());
        }
        Command::Score {
            suite,
            transcripts,
            answers,
            beta,
            gamma,
            verdict_step,
            out,
        } => {
            let params = CoreParams::new(beta, gamma)?;
            let files = pipeline::cmd_score(
                &suite,
                &transcripts,
                answers.as_deref(),
                &params,
                verdict_step,
                &out,
            )?;
            println!("report {}", files.json.display());
        }
        Command::Eval {
            records,
            regime,
            alpha,
            lambda,
            r,
            std,
            out,
        } => {
            let params = EvalParams {
                alphas: alpha,
                lambda,
                r,
                std_convention: match std {
                    StdArg::Sample => StdConvention::Sample,
                    StdArg::Population => StdConvention::Population,
                },
            };
            let files = pipeline::cmd_eval(&records, regime, &params, &out)?;
            println!("summary {}", files.summary_csv.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    log::debug!("config dir variable: {CONFIG_DIR_ENV}");
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
