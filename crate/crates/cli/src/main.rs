mod input;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use radlab::lp::{sweep_l_prime_on_grid, sweep_m_prime_on_grid, SweepReport};
use radlab::prover::certified_lower_bound;
use radlab::rademacher::{exact_distribution, prob_abs_within};
use radlab::rational::{decimal_string, fraction_string, int};
use radlab::report::Num;
use radlab::sampling::{SampleTarget, VectorSampler};
use radlab::{Rational, WeightVector};
use serde_json::json;

use input::{emit, load_weights, nonnegative_rational, positive_rational};
use verify::{vector_report, verify_vector, Status};

/// Exact sign-sum probabilities, lower-bound certificates and LP grid
/// sweeps for weighted Rademacher sums.
///
/// Exit codes: 0 when every assertion holds, 1 when one fails, 2 on bad input.
#[derive(Parser)]
#[command(name = "radlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact P(|S| <= t), or P(|S| < t) with --strict.
    Exact(ExactArgs),
    /// Exact law of S as a list of atoms.
    Distribution(DistributionArgs),
    /// Lower-bound certificate for P(|S| <= 1).
    Bound(BoundArgs),
    /// Grid sweep of the seven-interval (L) or five-interval (M) program.
    Sweep(SweepArgs),
    /// Run every applicable lemma check on given or sampled vectors.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WeightArgs {
    /// Comma or space separated weights (fractions or decimals, `v×k`
    /// repeats `v` k times), or a path to a file holding such a list.
    #[arg(short, long)]
    weights: String,
    /// Read the weights as floats and project them onto an exact unit
    /// vector (norm must be 1 within 1e-12).
    #[arg(long)]
    float: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    weights: WeightArgs,
    #[arg(long, default_value = "1", value_parser = nonnegative_rational)]
    threshold: Rational,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct DistributionArgs {
    #[command(flatten)]
    weights: WeightArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    weights: WeightArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Program {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "M", alias = "m")]
    M,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(value_enum)]
    which: Program,
    #[arg(long, default_value = "1/100", value_parser = positive_rational)]
    step: Rational,
    #[arg(long, default_value = "1/200", value_parser = positive_rational)]
    margin: Rational,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Where the grid goes; without it the grid is printed and the
    /// summary goes to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long, conflicts_with = "random")]
    weights: Option<String>,
    #[arg(long, requires = "weights")]
    float: bool,
    /// Check this many sampled vectors instead.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command either ran (and its assertions held or not) or could not run.
enum Outcome {
    Holds,
    Fails,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

fn json_line(value: &serde_json::Value) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("json");
    text.push('\n');
    text.into_bytes()
}

fn weights(args: &WeightArgs) -> Result<WeightVector> {
    load_weights(&args.weights, args.float)
}

fn cmd_exact(args: &ExactArgs) -> Result<Outcome> {
    let a = weights(&args.weights)?;
    let p = prob_abs_within(&a, &args.threshold, args.strict)?;
    let body = json!({ "probability": fraction_string(&p), "decimal": decimal_string(&p, 12) });
    println!("{body}");
    Ok(Outcome::Holds)
}

fn cmd_distribution(args: &DistributionArgs) -> Result<Outcome> {
    let a = weights(&args.weights)?;
    let law = exact_distribution(&a)?;
    let body = match args.format {
        Format::Json => {
            let atoms: Vec<_> = law
                .atoms()
                .iter()
                .map(|(v, p)| json!({ "value": Num::of(v), "probability": Num::of(p) }))
                .collect();
            json_line(&json!({ "n": a.len(), "atoms": atoms }))
        }
        Format::Csv => {
            let mut text = String::from("value,value_decimal,probability,probability_decimal\n");
            for (v, p) in law.atoms() {
                let (v, p) = (Num::of(&v), Num::of(&p));
                text.push_str(&format!("{},{},{},{}\n", v.fraction, v.decimal, p.fraction, p.decimal));
            }
            text.into_bytes()
        }
    };
    emit(args.out.as_ref(), &body)?;
    Ok(Outcome::Holds)
}

fn cmd_bound(args: &BoundArgs) -> Result<Outcome> {
    let a = weights(&args.weights)?;
    let certificate = certified_lower_bound(&a)?;
    emit(args.out.as_ref(), &json_line(&certificate.to_json()))?;
    Ok(certificate.is_valid().into())
}

fn sweep_json(report: &SweepReport) -> serde_json::Value {
    let points: Vec<_> = report
        .grid_points
        .iter()
        .map(|g| {
            json!({
                "first": Num::of(&g.first),
                "second": Num::of(&g.second),
                "optimal_value": Num::of(&g.optimal_value),
                "vertex": g.vertex.iter().map(Num::of).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "summary": sweep_summary(report), "points": points })
}

fn sweep_summary(report: &SweepReport) -> serde_json::Value {
    json!({
        "program": report.kind,
        "step": Num::of(&report.step),
        "margin": Num::of(&report.margin),
        "grid_points": report.grid_points.len(),
        "max_value": Num::of(&report.max_value),
        "max_point": [Num::of(&report.max_point.0), Num::of(&report.max_point.1)],
        "threshold": Num::of(&report.threshold),
        "all_below": report.all_below,
    })
}

fn cmd_sweep(args: &SweepArgs) -> Result<Outcome> {
    if args.margin.clone() * int(2) < args.step {
        eprintln!(
            "warning: margin {} is below half the step {}; the rounded program may not dominate",
            fraction_string(&args.margin),
            fraction_string(&args.step)
        );
    }
    let report = match args.which {
        Program::L => sweep_l_prime_on_grid(&args.step, &args.margin)?,
        Program::M => sweep_m_prime_on_grid(&args.step, &args.margin)?,
    };
    let body = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            buf
        }
        Format::Json => json_line(&sweep_json(&report)),
    };
    emit(args.out.as_ref(), &body)?;
    let summary = sweep_summary(&report).to_string();
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(report.all_below.into())
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let vectors = match (&args.weights, args.random) {
        (Some(w), _) => vec![load_weights(w, args.float)?],
        (None, Some(count)) => VectorSampler::new(args.seed)
            .sample_many(SampleTarget::Mixed, args.max_n, count)
            .context("sampling vectors")?,
        (None, None) => anyhow::bail!("give --weights or --random"),
    };
    let mut reports = Vec::new();
    let mut rows = String::from("vector,check,status\n");
    let (mut run, mut failed) = (0usize, 0usize);
    for (i, a) in vectors.iter().enumerate() {
        let checks = verify_vector(a)?;
        for c in &checks {
            match c.status {
                Status::Pass => run += 1,
                Status::Fail => {
                    run += 1;
                    failed += 1;
                }
                Status::Skipped => {}
            }
            rows.push_str(&format!("{i},{},{:?}\n", c.name, c.status).to_lowercase());
        }
        reports.push(vector_report(a, &checks));
    }
    let body = match args.format {
        Format::Json => json_line(&json!({
            "passed": failed == 0,
            "vectors_checked": vectors.len(),
            "checks_run": run,
            "failures": failed,
            "vectors": reports,
        })),
        Format::Csv => rows.into_bytes(),
    };
    emit(args.out.as_ref(), &body)?;
    Ok((failed == 0).into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Exact(a) => cmd_exact(a),
        Command::Distribution(a) => cmd_distribution(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
