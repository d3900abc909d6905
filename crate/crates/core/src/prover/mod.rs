//! Case classification and per-case certificates for the bound
//! `P(|sum eps_i a_i| <= 1) >= 0.46`.

mod certificate;

pub use certificate::{
    Cmp, Inequality, Lemma, Premise, ProofCertificate, ReplayFailure, Soundness, Step,
};

use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::constants::{
    BIG_LEADER_MIN, BIG_LEADER_RADIUS, BIG_LEADER_TAIL_POINT, CENTRAL_MASS, CENTRAL_PAIR_CAP,
    ESCAPE_LEVEL, GRID_MARGIN, GRID_STEP, JOINT_FAILURE_CAP, LP_CAP, MIDDLE_SPLIT,
    MIRROR_TAIL_FACTOR, SMALL_TERM_MAX, TARGET_BOUND,
};
use crate::error::{Error, Result};
use crate::lp::{build_l, build_m, solve_grid_program, ProgramKind};
use crate::mirror::{
    check_band_exclusion, check_distribution_equality, check_triple_split_lemma, escape_violations,
    joint_failure_probability, ReflectionSpec, TRIPLE_SPLIT_LIMIT,
};
use crate::partition::{five_interval_analysis, seven_interval_analysis, PartitionAnalysis};
use crate::rademacher::{prob_abs_within, residual_distribution, suffix_second_moment, WeightVector};
use crate::rational::{ceil_to_digits, dec, floor_scaled, floor_to_digits, from_f64, int, ratio, round_to_step, Rational};
use crate::tail::{bd_tail_bound, mirror_failure_bound};

/// Largest `n` for which certificates carry the enumerated lemma checks.
pub const DESK_SCALE_LIMIT: usize = 14;
/// Largest `n` for which the bound is compared with the exact probability.
pub const ORACLE_LIMIT: usize = 20;

pub(crate) fn target() -> Rational {
    dec(TARGET_BOUND)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    /// `n <= 3`.
    BaseSmallN,
    /// `a_1 >= 0.67`.
    BigA1,
    /// `a_1 + a_2 <= 1` and `a_3 <= 0.25`.
    SmallA,
    /// `0.25 <= a_3 <= a_1 <= 0.49`.
    Mid1,
    /// `0.49 <= a_1 <= 0.67`.
    Mid2,
}

/// First matching case in the order base, big leader, small tail, first
/// middle, second middle. Total: when `a_1 <= 0.49` and the small-tail case
/// fails, `a_1 + a_2 < 1` forces `a_3 > 0.25`.
pub fn classify(a: &WeightVector) -> CaseLabel {
    let w = a.weights();
    if w.len() <= 3 {
        return CaseLabel::BaseSmallN;
    }
    if w[0] >= dec(BIG_LEADER_MIN) {
        return CaseLabel::BigA1;
    }
    if &w[0] + &w[1] <= int(1) && w[2] <= dec(SMALL_TERM_MAX) {
        return CaseLabel::SmallA;
    }
    if w[2] >= dec(SMALL_TERM_MAX) && w[0] <= dec(MIDDLE_SPLIT) {
        return CaseLabel::Mid1;
    }
    debug_assert!(w[0] >= dec(MIDDLE_SPLIT) && w[0] <= dec(BIG_LEADER_MIN));
    CaseLabel::Mid2
}

/// `a_2..a_k` are big (`a_1 + a_i > 1`), `a_{k+1}..a_n` small; indices are
/// one-based and `k = 1` when nothing is big.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigSmallSplit {
    pub k: usize,
    pub big_terms: Vec<usize>,
    pub small_terms: Vec<usize>,
}

fn in_mid2_range(a: &WeightVector) -> bool {
    let a1 = a.weight(0);
    dec(MIDDLE_SPLIT) <= a1 && a1 <= dec(BIG_LEADER_MIN)
}

fn out_of_range(what: &str, a: &WeightVector) -> Error {
    Error::OutOfCaseRange(format!("{what}: {:?}", a.weights_f64()))
}

pub fn split_big_small(a: &WeightVector) -> Result<BigSmallSplit> {
    if !in_mid2_range(a) {
        return Err(out_of_range("big/small split needs 0.49 <= a1 <= 0.67", a));
    }
    let a1 = a.weight(0);
    let big: Vec<bool> = (1..a.len()).map(|i| &a1 + a.weight(i) > int(1)).collect();
    let k = 1 + big.iter().take_while(|b| **b).count();
    if big[k - 1..].iter().any(|b| *b) {
        return Err(Error::LemmaViolated("big terms do not form a prefix".into()));
    }
    Ok(BigSmallSplit {
        k,
        big_terms: (2..=k).collect(),
        small_terms: (k + 1..=a.len()).collect(),
    })
}

/// One `l` of the prefix-sum lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumLemmaRow {
    pub l: usize,
    /// `a_2 + ... + a_{l-1} + 2 a_l`.
    pub prefix_sum: Rational,
    /// `(1 + a_1) / (1 - a_1)`, the bound on `l - 1`.
    pub count_bound: Rational,
}

/// For every `2 <= l <= k`, checks `a_2 + ... + a_{l-1} + 2 a_l <= 2` and
/// `l - 1 <= (1 + a_1)/(1 - a_1)`. Both are theorems, so a failure means an
/// arithmetic bug.
pub fn check_sum_lemma(a: &WeightVector, split: &BigSmallSplit) -> Result<Vec<SumLemmaRow>> {
    if !in_mid2_range(a) {
        return Err(out_of_range("the prefix-sum lemma needs 0.49 <= a1 <= 0.67", a));
    }
    let a1 = a.weight(0);
    let count_bound = (int(1) + &a1) / (int(1) - &a1);
    let mut rows = Vec::new();
    let mut running = Rational::zero();
    for l in 2..=split.k {
        let al = a.weight(l - 1);
        let prefix_sum = &running + &al * int(2);
        if prefix_sum > int(2) {
            return Err(Error::LemmaViolated(format!("prefix sum {prefix_sum} > 2 at l = {l}")));
        }
        if int(l as i64 - 1) > count_bound {
            return Err(Error::LemmaViolated(format!("{} big terms exceed {count_bound}", l - 1)));
        }
        rows.push(SumLemmaRow {
            l,
            prefix_sum,
            count_bound: count_bound.clone(),
        });
        running += al;
    }
    Ok(rows)
}

fn weight_inputs(a: &WeightVector, count: usize) -> Vec<(String, Rational)> {
    (0..count.min(a.len())).map(|i| (format!("a{}", i + 1), a.weight(i))).collect()
}

fn step_owned(
    lemma: Lemma,
    inputs: Vec<(String, Rational)>,
    values: Vec<(String, Rational)>,
    lhs: Rational,
    relation: Cmp,
    rhs: Rational,
) -> Step {
    let mut s = Step::check(lemma, vec![], vec![], lhs, relation, rhs);
    s.inputs = inputs;
    s.values = values;
    s
}

fn count(c: u64) -> Rational {
    Rational::from_integer(c.into())
}

fn flag(b: bool) -> Rational {
    int(b as i64)
}

fn finish(case: CaseLabel, a: &WeightVector, mut steps: Vec<Step>, bound: Rational) -> Result<ProofCertificate> {
    steps.push(Step::check(
        Lemma::LowerBound,
        vec![],
        vec![],
        bound.clone(),
        Cmp::Ge,
        target(),
    ));
    let (exact, sound) = if a.len() <= ORACLE_LIMIT {
        let p = prob_abs_within(a, &int(1), false)?;
        let sound = if bound <= p {
            Soundness::Sound
        } else {
            Soundness::Unsound
        };
        (Some(p), sound)
    } else {
        (None, Soundness::NotChecked)
    };
    Ok(ProofCertificate {
        case,
        weights: a.weights(),
        steps,
        lower_bound: bound,
        exact_probability: exact,
        sound,
    })
}

/// `n <= 3`: for `n = 1` both signed sums are `+-1`; for `n = 2, 3` the
/// listed cross-signed sums (half of all patterns) have modulus at most 1.
pub fn prove_base(a: &WeightVector) -> Result<ProofCertificate> {
    let n = a.len();
    if n > 3 {
        return Err(out_of_range("the base case needs n <= 3", a));
    }
    let w = a.weights();
    let sums: Vec<(&str, Rational)> = match n {
        1 => vec![("a1", w[0].clone())],
        2 => vec![("a1-a2", &w[0] - &w[1])],
        _ => vec![
            ("a1-a2+a3", &w[0] - &w[1] + &w[2]),
            ("-a1+a2+a3", -&w[0] + &w[1] + &w[2]),
            ("-a1+a2-a3", -&w[0] + &w[1] - &w[2]),
            ("a1-a2-a3", &w[0] - &w[1] - &w[2]),
        ],
    };
    let largest = sums
        .iter()
        .map(|(_, s)| if s < &int(0) { -s } else { s.clone() })
        .max()
        .expect("non-empty");
    let step = step_owned(
        Lemma::SmallDimensionSums,
        weight_inputs(a, n),
        sums.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        largest,
        Cmp::Le,
        int(1),
    );
    let bound = if n == 1 { int(1) } else { ratio(1, 2) };
    finish(CaseLabel::BaseSmallN, a, vec![step], bound)
}

/// The normal-tail mass `1 - 2 * 3.18 * Q(2.24)` as a rational lower
/// bound with 12 digits.
pub fn big_leader_core_mass() -> Rational {
    let point = dec(BIG_LEADER_TAIL_POINT).to_f64().expect("finite");
    let core = 1.0 - 2.0 * bd_tail_bound(point);
    // f64 rounding in the subtraction is far below the truncation
    floor_to_digits(&from_f64(core), 12) - ratio(1, 1_000_000_000_000)
}

/// `a_1 >= 0.67`: choosing the sign of `a_1` against the rest gives
/// `P >= 1/2 P(|rest| <= 1.67)`, and the normalized rest is controlled by
/// the normal-tail comparison at `1.67 / sqrt(1 - 0.67^2) >= 2.24`.
pub fn prove_big_a1(a: &WeightVector) -> Result<ProofCertificate> {
    let a1 = a.weight(0);
    if a1 < dec(BIG_LEADER_MIN) {
        return Err(out_of_range("the big-leader case needs a1 >= 0.67", a));
    }
    let radius = dec(BIG_LEADER_RADIUS);
    let point = dec(BIG_LEADER_TAIL_POINT);
    let mut steps = vec![
        Step::check(
            Lemma::CaseSelection,
            vec![("a1", a1.clone())],
            vec![],
            a1.clone(),
            Cmp::Ge,
            dec(BIG_LEADER_MIN),
        ),
        // a sign of eps_1 opposite to the rest lands in [-1, 1] when |rest| <= 1.67
        Step::check(
            Lemma::CaseSelection,
            vec![("a1", a1.clone()), ("radius", radius.clone())],
            vec![],
            &radius - &a1,
            Cmp::Le,
            int(1),
        ),
    ];
    let rest = int(1) - &a1 * &a1;
    let mut values = vec![("radius", radius.clone()), ("tail_point", point.clone())];
    if !rest.is_zero() {
        let scaled = radius.to_f64().unwrap() / rest.to_f64().unwrap().sqrt();
        values.push(("scaled_radius_estimate", floor_to_digits(&from_f64(scaled), 12)));
    }
    steps.push(Step::check(
        Lemma::LeaderRadius,
        vec![("a1", a1.clone())],
        values,
        &radius * &radius,
        Cmp::Ge,
        &point * &point * &rest,
    ));
    steps.push(Step::check(
        Lemma::RemainderNormalization,
        vec![("a1", a1.clone())],
        vec![],
        suffix_second_moment(a, 1),
        Cmp::Eq,
        rest.clone(),
    ));
    let core = big_leader_core_mass();
    steps.push(Step::check(
        Lemma::NormalTailCore,
        vec![("tail_point", point)],
        vec![("tail_factor", dec(crate::constants::TAIL_FACTOR))],
        core.clone(),
        Cmp::Ge,
        target() * int(2),
    ));
    if a.len() <= DESK_SCALE_LIMIT {
        let law = residual_distribution(a, &[0])?;
        let inside = law.mass_abs_at_most_scaled(floor_scaled(&radius, a.denom()));
        steps.push(Step::check(
            Lemma::RemainderCoreMass,
            vec![("radius", radius)],
            vec![],
            law.probability_of_count(inside),
            Cmp::Ge,
            core.clone(),
        ));
    }
    finish(CaseLabel::BigA1, a, steps, core / int(2))
}

fn mirror_tail_step() -> Result<Step> {
    let value = ceil_to_digits(&from_f64(mirror_failure_bound()?), 12);
    Ok(Step::check(
        Lemma::MirrorTailCap,
        vec![("escape_level", dec(ESCAPE_LEVEL))],
        vec![("tail_factor", dec(MIRROR_TAIL_FACTOR))],
        value,
        Cmp::Lt,
        dec(JOINT_FAILURE_CAP),
    ))
}

/// Exact joint failure, escape dichotomy and law equality for one
/// reflection.
fn reflection_steps(a: &WeightVector, spec: &ReflectionSpec) -> Result<Vec<Step>> {
    let name = |s: &str| format!("{s}:{}", spec.name);
    let joint = joint_failure_probability(a, spec, &int(1))?;
    let escapes = escape_violations(a, spec)?;
    let equal = check_distribution_equality(a, spec)?;
    Ok(vec![
        step_owned(Lemma::JointFailure, vec![(name("level"), int(1))], vec![], joint, Cmp::Lt, dec(JOINT_FAILURE_CAP)),
        step_owned(
            Lemma::EscapeDichotomy,
            vec![(name("escape_level"), dec(ESCAPE_LEVEL))],
            vec![],
            count(escapes),
            Cmp::Eq,
            int(0),
        ),
        step_owned(Lemma::ReflectionSymmetry, vec![], vec![(name("laws_equal"), flag(equal))], flag(equal), Cmp::Eq, int(1)),
    ])
}

fn mirror_bound() -> Rational {
    (int(1) - dec(JOINT_FAILURE_CAP)) / int(2)
}

/// `a_1 + a_2 <= 1`, `a_3 <= 0.25`: forward reflection at 0.75.
pub fn prove_small_a(a: &WeightVector) -> Result<ProofCertificate> {
    let w = a.weights();
    let pair = w.iter().take(2).sum::<Rational>();
    let third = w.get(2).cloned().unwrap_or_else(Rational::zero);
    if pair > int(1) || third > dec(SMALL_TERM_MAX) {
        return Err(out_of_range("the small-tail case needs a1 + a2 <= 1 and a3 <= 0.25", a));
    }
    let mut steps = vec![
        step_owned(Lemma::CaseSelection, weight_inputs(a, 2), vec![], pair, Cmp::Le, int(1)),
        Step::check(Lemma::CaseSelection, vec![("a3", third.clone())], vec![], third, Cmp::Le, dec(SMALL_TERM_MAX)),
        mirror_tail_step()?,
    ];
    if a.len() <= DESK_SCALE_LIMIT {
        steps.extend(reflection_steps(a, &ReflectionSpec::outer())?);
    }
    finish(CaseLabel::SmallA, a, steps, mirror_bound())
}

fn rounding_step(a1: &Rational, second: &Rational) -> (Step, Rational, Rational) {
    let grid = dec(GRID_STEP);
    let e = dec(GRID_MARGIN);
    let r1 = round_to_step(a1, &grid);
    let r2 = round_to_step(second, &grid);
    let dist = |x: &Rational, r: &Rational| {
        let d = x - r;
        if d < int(0) {
            -d
        } else {
            d
        }
    };
    let worst = dist(a1, &r1).max(dist(second, &r2));
    let step = Step::check(
        Lemma::GridRounding,
        vec![("a1", a1.clone()), ("second", second.clone()), ("grid_step", grid)],
        vec![("a1_rounded", r1.clone()), ("second_rounded", r2.clone())],
        worst,
        Cmp::Le,
        e,
    );
    (step, r1, r2)
}

fn program_step(kind: ProgramKind, r1: &Rational, r2: &Rational) -> Result<(Step, Rational)> {
    let e = dec(GRID_MARGIN);
    let solution = solve_grid_program(kind, r1, r2, &e)?;
    let lemma = match kind {
        ProgramKind::L => Lemma::SevenIntervalProgram,
        ProgramKind::M => Lemma::FiveIntervalProgram,
    };
    let mut values: Vec<(String, Rational)> = solution
        .vertex
        .iter()
        .enumerate()
        .map(|(i, x)| (format!("x{}", i + 1), x.clone()))
        .collect();
    values.insert(0, ("margin".into(), e.clone()));
    let step = step_owned(
        lemma,
        vec![("a1_rounded".into(), r1.clone()), ("second_rounded".into(), r2.clone())],
        values,
        solution.optimal_value.clone(),
        Cmp::Le,
        dec(LP_CAP),
    );
    Ok((step, solution.optimal_value))
}

/// Feasibility of the exact interval masses, the exceedance identity and
/// the comparison with the grid optimum.
fn partition_steps(a: &WeightVector, analysis: &PartitionAnalysis, exact_lp: &crate::lp::LinearProgram, second: &Rational, grid_value: &Rational) -> Result<Vec<Step>> {
    let p = &analysis.probabilities.p;
    let p_values: Vec<(String, Rational)> = p
        .iter()
        .enumerate()
        .map(|(i, x)| (format!("p{}", i + 1), x.clone()))
        .collect();
    let violated = exact_lp.constraints.iter().filter(|c| !c.is_satisfied(p)).count() as u64;
    let exact = prob_abs_within(a, &int(1), false)?;
    Ok(vec![
        step_owned(
            Lemma::ProgramFeasibility,
            vec![("a1".into(), a.weight(0)), ("second".into(), second.clone())],
            p_values,
            count(violated),
            Cmp::Eq,
            int(0),
        ),
        Step::check(
            Lemma::ExceedanceIdentity,
            vec![],
            vec![("probability_within_one", exact.clone())],
            analysis.exceedance.clone(),
            Cmp::Eq,
            int(1) - exact,
        ),
        Step::check(
            Lemma::ExceedanceBelowProgram,
            vec![],
            vec![],
            analysis.exceedance.clone(),
            Cmp::Le,
            grid_value.clone(),
        ),
    ])
}

/// `0.25 <= a_3 <= a_1 <= 0.49`: seven-interval conditioning on the tail
/// from `a_3`, bounded by the grid program at rounded parameters.
pub fn prove_mid1(a: &WeightVector) -> Result<ProofCertificate> {
    if a.len() < 3 || a.weight(2) < dec(SMALL_TERM_MAX) || a.weight(0) > dec(MIDDLE_SPLIT) {
        return Err(out_of_range("the first middle case needs 0.25 <= a3 <= a1 <= 0.49", a));
    }
    let (a1, a2, a3) = (a.weight(0), a.weight(1), a.weight(2));
    let mut steps = vec![
        Step::check(Lemma::CaseSelection, vec![("a3", a3.clone())], vec![], a3, Cmp::Ge, dec(SMALL_TERM_MAX)),
        Step::check(Lemma::CaseSelection, vec![("a1", a1.clone())], vec![], a1.clone(), Cmp::Le, dec(MIDDLE_SPLIT)),
    ];
    let (rounding, r1, r2) = rounding_step(&a1, &a2);
    steps.push(rounding);
    let (program, value) = program_step(ProgramKind::L, &r1, &r2)?;
    steps.push(program);

    let pair = &a1 + &a2;
    let central = pair <= dec(CENTRAL_PAIR_CAP);
    if central && a.len() <= TRIPLE_SPLIT_LIMIT {
        let r = check_triple_split_lemma(a)?;
        steps.push(Step::check(
            Lemma::TripleSplit,
            vec![],
            vec![
                ("laws_equal", flag(r.laws_equal)),
                ("central_mass", r.central_mass.clone()),
            ],
            count(r.pathwise_failures),
            Cmp::Eq,
            int(0),
        ));
        steps.push(Step::check(Lemma::RemainderCoreMass, vec![], vec![], r.remainder_mass, Cmp::Ge, target()));
        steps.push(Step::check(Lemma::TripleSplit, vec![], vec![], flag(r.laws_equal), Cmp::Eq, int(1)));
        steps.push(Step::check(
            Lemma::CentralMass,
            vec![("a1", a1.clone()), ("a2", a2.clone())],
            vec![],
            r.first_interval_mass,
            Cmp::Ge,
            dec(CENTRAL_MASS),
        ));
    } else if central {
        steps.push(
            Step::check(
                Lemma::CentralMass,
                vec![("a1", a1.clone()), ("a2", a2.clone())],
                vec![("central_mass_floor", dec(CENTRAL_MASS))],
                pair,
                Cmp::Le,
                dec(CENTRAL_PAIR_CAP),
            )
            .with_premise(Premise::Induction),
        );
    }

    if a.len() <= DESK_SCALE_LIMIT {
        let analysis = seven_interval_analysis(a)?;
        let p = &analysis.probabilities;
        steps.push(Step::check(Lemma::FirstBand, vec![], vec![], p.band(3, 5), Cmp::Le, ratio(1, 2)));
        steps.push(Step::check(Lemma::SecondBand, vec![], vec![], p.band(4, 6), Cmp::Le, ratio(1, 2)));
        for (lemma, spec) in [
            (Lemma::FirstBand, ReflectionSpec::first_band()),
            (Lemma::SecondBand, ReflectionSpec::second_band()),
        ] {
            let r = check_band_exclusion(a, &spec)?;
            steps.push(Step::check(lemma, vec![], vec![], count(r.violations), Cmp::Eq, int(0)));
        }
        steps.extend(partition_steps(a, &analysis, &build_l(&a1, &a2)?, &a2, &value)?);
    }
    finish(CaseLabel::Mid1, a, steps, int(1) - value)
}

/// `0.49 <= a_1 <= 0.67`: the five-interval program when a small term of
/// size at least 0.25 exists, the reverse-order reflection otherwise.
pub fn prove_mid2(a: &WeightVector) -> Result<ProofCertificate> {
    let split = split_big_small(a)?;
    let a1 = a.weight(0);
    let mut steps = vec![
        Step::check(Lemma::CaseSelection, vec![("a1", a1.clone())], vec![], a1.clone(), Cmp::Ge, dec(MIDDLE_SPLIT)),
        Step::check(Lemma::CaseSelection, vec![("a1", a1.clone())], vec![], a1.clone(), Cmp::Le, dec(BIG_LEADER_MIN)),
    ];
    let first_small = split.small_terms.first().map(|&i| a.weight(i - 1));
    let k_value = int(split.k as i64);
    steps.push(match &first_small {
        Some(s) => Step::check(
            Lemma::BigSmallSplit,
            vec![("a1", a1.clone()), ("first_small", s.clone())],
            vec![("k", k_value)],
            &a1 + s,
            Cmp::Le,
            int(1),
        ),
        None => Step::check(Lemma::BigSmallSplit, vec![], vec![("k", k_value.clone())], k_value, Cmp::Eq, int(a.len() as i64)),
    });

    match first_small {
        Some(aj) if aj >= dec(SMALL_TERM_MAX) => {
            let j = split.k; // zero-based index of a_{k+1}
            steps.push(Step::check(
                Lemma::SmallTermChoice,
                vec![("aj", aj.clone())],
                vec![("j", int(j as i64 + 1))],
                aj.clone(),
                Cmp::Ge,
                dec(SMALL_TERM_MAX),
            ));
            let (rounding, r1, rj) = rounding_step(&a1, &aj);
            steps.push(rounding);
            let (program, value) = program_step(ProgramKind::M, &r1, &rj)?;
            steps.push(program);
            if a.len() <= DESK_SCALE_LIMIT {
                let analysis = five_interval_analysis(a, j)?;
                steps.extend(partition_steps(a, &analysis, &build_m(&a1, &aj)?, &aj, &value)?);
            }
            finish(CaseLabel::Mid2, a, steps, int(1) - value)
        }
        small => {
            steps.push(Step::check(
                Lemma::SmallTermChoice,
                vec![],
                vec![],
                small.unwrap_or_else(Rational::zero),
                Cmp::Lt,
                dec(SMALL_TERM_MAX),
            ));
            for row in check_sum_lemma(a, &split)? {
                let mut inputs: Vec<(String, Rational)> =
                    (2..=row.l).map(|i| (format!("a_{i}"), a.weight(i - 1))).collect();
                inputs.insert(0, ("l".into(), int(row.l as i64)));
                steps.push(step_owned(Lemma::PrefixSum, inputs, vec![], row.prefix_sum, Cmp::Le, int(2)));
                steps.push(Step::check(
                    Lemma::BigTermCount,
                    vec![("a1", a1.clone())],
                    vec![],
                    int(row.l as i64 - 1),
                    Cmp::Le,
                    row.count_bound,
                ));
            }
            steps.push(mirror_tail_step()?);
            if a.len() <= DESK_SCALE_LIMIT {
                steps.extend(reflection_steps(a, &ReflectionSpec::reverse())?);
            }
            finish(CaseLabel::Mid2, a, steps, mirror_bound())
        }
    }
}

/// Dispatches on [`classify`] and returns that case's certificate.
pub fn certified_lower_bound(a: &WeightVector) -> Result<ProofCertificate> {
    match classify(a) {
        CaseLabel::BaseSmallN => prove_base(a),
        CaseLabel::BigA1 => prove_big_a1(a),
        CaseLabel::SmallA => prove_small_a(a),
        CaseLabel::Mid1 => prove_mid1(a),
        CaseLabel::Mid2 => prove_mid2(a),
    }
}
