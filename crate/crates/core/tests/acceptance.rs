//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{enumeration_outcome, normal_tail_quadrature, random_lp, simplex, SimplexOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use radlab::lp::{sweep_l_prime, sweep_m_prime, SweepReport};
use radlab::mirror::{check_band_exclusion, check_distribution_equality, escape_violations, ReflectionSpec};
use radlab::partition::{five_interval_analysis, seven_interval_analysis};
use radlab::prover::{certified_lower_bound, check_sum_lemma, split_big_small, Soundness};
use radlab::rademacher::{prob_abs_within, WeightVector};
use radlab::rational::{dec, decimal_string, int, ratio};
use radlab::sampling::{SampleTarget, VectorSampler};
use radlab::tail::{mirror_failure_bound, normal_upper_tail};
use radlab::Rational;

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn samples(seed: u64, target: SampleTarget, max_n: usize, count: usize) -> Vec<WeightVector> {
    VectorSampler::new(seed)
        .sample_many(target, max_n, count)
        .expect("sampler reaches the target")
}

fn sweep_line(report: &SweepReport, expected_points: Option<usize>) -> Outcome {
    let summary = format!(
        "{} points, max {} at ({}, {})",
        report.grid_points.len(),
        decimal_string(&report.max_value, 6),
        decimal_string(&report.max_point.0, 2),
        decimal_string(&report.max_point.1, 2),
    );
    if expected_points.is_some_and(|n| n != report.grid_points.len()) {
        return Err(format!("{summary}; expected {} points", expected_points.unwrap()));
    }
    if report.all_below && report.max_value <= dec("0.54") {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn l_sweep() -> Outcome {
    let report = sweep_l_prime(&ratio(1, 200)).map_err(|e| e.to_string())?;
    sweep_line(&report, Some(325))
}

fn m_sweep() -> Outcome {
    let report = sweep_m_prime(&ratio(1, 200)).map_err(|e| e.to_string())?;
    sweep_line(&report, None)
}

fn tail_constants() -> Outcome {
    let q25 = normal_upper_tail(2.5);
    let q224 = normal_upper_tail(2.24);
    let cap = 6.36 * q25.upper_bound;
    let doubled = mirror_failure_bound().map_err(|e| e.to_string())?;
    let core = 1.0 - 3.18 * 2.0 * q224.upper_bound;
    let worst_error = (0..=120)
        .map(|k| k as f64 * 0.05)
        .chain([2.24, 2.5])
        .map(|x| (normal_upper_tail(x).point_estimate - normal_tail_quadrature(x)).abs())
        .fold(0.0f64, f64::max);
    let summary = format!(
        "6.36*Q(2.5) = {cap:.6}, 12.72*Q(2.5) = {doubled:.6}, 1 - 6.36*Q(2.24) = {core:.6}, max |Q - quadrature| = {worst_error:.1e}"
    );
    if cap < 0.08 && doubled < 0.08 && (0.9200..=0.9204).contains(&core) && worst_error <= 1e-9 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn tight_examples() -> Outcome {
    let quarter = WeightVector::new(&vec![ratio(1, 2); 4]).map_err(|e| e.to_string())?;
    let ninth = WeightVector::new(&vec![ratio(1, 3); 9]).map_err(|e| e.to_string())?;
    let probe = |a: &WeightVector, strict| prob_abs_within(a, &int(1), strict).unwrap();
    let got = [probe(&quarter, false), probe(&quarter, true), probe(&ninth, false), probe(&ninth, true)];
    let want = [ratio(7, 8), ratio(3, 8), ratio(105, 128), ratio(63, 128)];
    let summary = got.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    if got == want && got[3] < ratio(1, 2) {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn partition_identities(mid1: &[WeightVector], mid2: &[WeightVector]) -> Outcome {
    let mut failures = Vec::new();
    for a in mid1 {
        let seven = seven_interval_analysis(a).map_err(|e| e.to_string())?;
        if seven.exceedance != int(1) - prob_abs_within(a, &int(1), false).unwrap() {
            failures.push(format!("seven: {:?}", a.weights_f64()));
        }
    }
    for a in mid2 {
        let j = split_big_small(a).map_err(|e| e.to_string())?.k;
        let five = five_interval_analysis(a, j).map_err(|e| e.to_string())?;
        if five.exceedance != int(1) - prob_abs_within(a, &int(1), false).unwrap() {
            failures.push(format!("five: {:?}", a.weights_f64()));
        }
    }
    let summary = format!("{} seven-interval and {} five-interval vectors", mid1.len(), mid2.len());
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {} mismatches, first {}", failures.len(), failures[0]))
    }
}

fn lemma_suite(mid1: &[WeightVector], mid2: &[WeightVector], small: &[WeightVector], mirrored: &[WeightVector]) -> Outcome {
    let half = ratio(1, 2);
    let (mut bands, mut central, mut central_checked, mut prefix, mut escapes) = (0, 0, 0, 0, 0u64);
    for a in mid1 {
        let p = seven_interval_analysis(a).map_err(|e| e.to_string())?.probabilities;
        if p.band(3, 5) > half || p.band(4, 6) > half {
            bands += 1;
        }
        for spec in [ReflectionSpec::first_band(), ReflectionSpec::second_band()] {
            if !check_band_exclusion(a, &spec).map_err(|e| e.to_string())?.holds() {
                bands += 1;
            }
        }
        if a.weight(0) + a.weight(1) <= dec("0.665") {
            central_checked += 1;
            if p.p[0] < dec("0.115") {
                central += 1;
            }
        }
    }
    for a in mid2.iter().chain(mirrored) {
        let split = split_big_small(a).map_err(|e| e.to_string())?;
        let rows = check_sum_lemma(a, &split).map_err(|e| e.to_string())?;
        prefix += rows.iter().filter(|r| r.prefix_sum > int(2)).count();
    }
    for a in small {
        escapes += escape_violations(a, &ReflectionSpec::outer()).map_err(|e| e.to_string())?;
    }
    for a in mirrored {
        escapes += escape_violations(a, &ReflectionSpec::reverse()).map_err(|e| e.to_string())?;
    }
    let summary = format!(
        "band failures {bands}, central-mass failures {central}/{central_checked}, prefix failures {prefix}, escape violations {escapes}"
    );
    if bands + central + prefix == 0 && escapes == 0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn reflection_laws() -> Outcome {
    let vectors = samples(SEED + 7, SampleTarget::Any, 12, 100);
    let specs = ReflectionSpec::standard();
    let mut failures = 0;
    for a in &vectors {
        for spec in &specs {
            if !check_distribution_equality(a, spec).map_err(|e| e.to_string())? {
                failures += 1;
            }
        }
    }
    let summary = format!("{} vectors x {} reflections, {failures} mismatches", vectors.len(), specs.len());
    if failures == 0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let vectors = samples(SEED + 8, SampleTarget::Mixed, 16, 1000);
    let target = dec("0.46");
    let mut worst_bound: Option<Rational> = None;
    let mut worst_exact: Option<Rational> = None;
    let mut failures = Vec::new();
    for a in &vectors {
        let c = certified_lower_bound(a).map_err(|e| format!("{:?}: {e}", a.weights_f64()))?;
        let exact = c.exact_probability.clone().ok_or("exact probability missing")?;
        if c.lower_bound < target || c.sound != Soundness::Sound || exact < target || c.replay().is_err() {
            failures.push(a.weights_f64());
        }
        if worst_bound.as_ref().is_none_or(|w| c.lower_bound < *w) {
            worst_bound = Some(c.lower_bound.clone());
        }
        if worst_exact.as_ref().is_none_or(|w| exact < *w) {
            worst_exact = Some(exact);
        }
    }
    let summary = format!(
        "{} vectors, min bound {}, min exact {}, {:.1}s",
        vectors.len(),
        decimal_string(&worst_bound.unwrap_or_default(), 6),
        decimal_string(&worst_exact.unwrap_or_default(), 6),
        start.elapsed().as_secs_f64()
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {} failures, first {:?}", failures.len(), failures[0]))
    }
}

fn lp_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let (mut optimal, mut mismatches) = (0, 0);
    for _ in 0..100 {
        let lp = random_lp(&mut rng, 7, true);
        let ours = enumeration_outcome(&lp);
        if ours != simplex(&lp) {
            mismatches += 1;
        }
        if matches!(ours, SimplexOutcome::Optimal(_)) {
            optimal += 1;
        }
    }
    let summary = format!("100 programs ({optimal} optimal), {mismatches} mismatches");
    if mismatches == 0 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn main() -> ExitCode {
    let mid1 = samples(SEED + 1, SampleTarget::Mid1, 14, 200);
    let mid2 = samples(SEED + 2, SampleTarget::Mid2WithSmallTerm, 14, 200);
    let small = samples(SEED + 3, SampleTarget::SmallA, 14, 200);
    let mirrored = samples(SEED + 4, SampleTarget::Mid2Reflection, 14, 200);

    let criteria: Vec<Criterion> = vec![
        ("seven-interval grid sweep <= 0.54", Box::new(l_sweep)),
        ("five-interval grid sweep <= 0.54", Box::new(m_sweep)),
        ("normal tail constants", Box::new(tail_constants)),
        ("tight example probabilities", Box::new(tight_examples)),
        ("exceedance identities", Box::new(|| partition_identities(&mid1, &mid2))),
        ("lemma suite", Box::new(|| lemma_suite(&mid1, &mid2, &small, &mirrored))),
        ("reflection laws", Box::new(reflection_laws)),
        ("end-to-end lower bound", Box::new(end_to_end)),
        ("LP solver vs simplex", Box::new(lp_equivalence)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
