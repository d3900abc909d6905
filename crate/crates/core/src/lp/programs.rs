//! The conditioning programs over interval masses `x_1..x_7` (seven
//! intervals) and `x_1..x_5` (five intervals), at exact parameters and at
//! grid-rounded parameters with a rounding margin.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::{One, Signed, Zero};
use serde::Serialize;

use super::solver::{solve_lp, LPSolution, LinearProgram, Relation};
use crate::constants::{
    BIG_LEADER_MIN, CENTRAL_MASS, CENTRAL_PAIR_CAP, GRID_MARGIN, GRID_STEP, MIDDLE_SPLIT,
    SMALL_TERM_MAX,
};
use crate::error::{Error, Result};
use crate::partition::{build_five_intervals, build_seven_intervals};
use crate::rational::{dec, int, is_multiple_of, ratio, round_to_step, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProgramKind {
    /// Seven-interval program in `(a1, a2)`.
    L,
    /// Five-interval program in `(a1, aj)`.
    M,
}

fn exceedance_objective(count: usize) -> Vec<Rational> {
    (0..count).map(|k| ratio(k.min(4) as i64, 4)).collect()
}

fn unit_vector(count: usize, hot: &[usize]) -> Vec<Rational> {
    (0..count)
        .map(|k| if hot.contains(&k) { int(1) } else { int(0) })
        .collect()
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

/// Shared skeleton of L and L': the moment row coefficients, its right-hand
/// side, and whether the central-mass row is present.
fn seven_program(moment: Vec<Rational>, moment_rhs: Rational, central_row: bool) -> LinearProgram {
    let mut lp = LinearProgram::maximize(exceedance_objective(7));
    lp.constrain(vec![int(1); 7], Relation::Eq, int(1))
        .constrain(unit_vector(7, &[2, 3, 4]), Relation::Le, ratio(1, 2))
        .constrain(unit_vector(7, &[3, 4, 5]), Relation::Le, ratio(1, 2))
        .constrain(moment, Relation::Le, moment_rhs);
    if central_row {
        lp.constrain(unit_vector(7, &[0]), Relation::Ge, dec(CENTRAL_MASS));
    }
    lp
}

fn five_program(moment: Vec<Rational>, moment_rhs: Rational) -> LinearProgram {
    let mut lp = LinearProgram::maximize(exceedance_objective(5));
    lp.constrain(vec![int(1); 5], Relation::Eq, int(1))
        .constrain(moment, Relation::Le, moment_rhs);
    lp
}

pub fn in_l_range(a1: &Rational, a2: &Rational) -> bool {
    let lo = dec(SMALL_TERM_MAX);
    let hi = dec(MIDDLE_SPLIT);
    &lo <= a2 && a2 <= a1 && a1 <= &hi
}

/// `0.49 <= a1 <= 0.67` and `0.25 <= aj <= min(cap - a1, a1)`.
fn in_m_range(a1: &Rational, aj: &Rational, cap: &Rational) -> bool {
    let upper = (cap - a1).min(a1.clone());
    &dec(MIDDLE_SPLIT) <= a1
        && a1 <= &dec(BIG_LEADER_MIN)
        && &dec(SMALL_TERM_MAX) <= aj
        && aj <= &upper
}

/// `L(a1, a2)`: maximize `x2/4 + x3/2 + 3x4/4 + x5 + x6 + x7` over interval
/// masses summing to one, with the two half-mass bands, the second-moment
/// row whose coefficients are the squared interval infima, and
/// `x1 >= 0.115` when `a1 + a2 <= 0.665`.
pub fn build_l(a1: &Rational, a2: &Rational) -> Result<LinearProgram> {
    if !in_l_range(a1, a2) {
        return Err(invalid(format!("L needs 0.25 <= a2 <= a1 <= 0.49, got ({a1}, {a2})")));
    }
    let part = build_seven_intervals(a1, a2)?;
    let moment = part
        .intervals
        .iter()
        .map(|iv| iv.infimum() * iv.infimum())
        .collect();
    let rhs = int(1) - a1 * a1 - a2 * a2;
    Ok(seven_program(moment, rhs, a1 + a2 <= dec(CENTRAL_PAIR_CAP)))
}

/// `L'(a1', a2')` with hundredth-grid parameters and margin `e`.
pub fn build_l_prime(a1p: &Rational, a2p: &Rational, e: &Rational) -> Result<LinearProgram> {
    build_l_prime_on_grid(a1p, a2p, e, &dec(GRID_STEP))
}

/// `L'` with parameters on an arbitrary grid `step`.
pub fn build_l_prime_on_grid(
    a1p: &Rational,
    a2p: &Rational,
    e: &Rational,
    step: &Rational,
) -> Result<LinearProgram> {
    if !in_l_range(a1p, a2p) {
        return Err(invalid(format!(
            "L' needs 0.25 <= a2' <= a1' <= 0.49, got ({a1p}, {a2p})"
        )));
    }
    check_grid(&[a1p, a2p], step)?;
    check_margin(e)?;
    Ok(l_prime(a1p, a2p, e))
}

fn l_prime(a1: &Rational, a2: &Rational, e: &Rational) -> LinearProgram {
    let one = Rational::one();
    let three = int(3);
    let e2 = e * int(2);
    let sq = |x: Rational| &x * &x;
    let moment = vec![
        Rational::zero(),
        sq(&one - a1 - a2 - &e2),
        sq(&one - a1 + a2 - &e2),
        sq(&one + a1 - a2 - &e2),
        sq(&one + a1 + a2 - &e2),
        sq(&three - int(3) * a1 + a2 - e * int(4)),
        sq(&three + int(3) * a1 - int(5) * a2 - e * int(8)),
    ];
    let rhs = &one - sq(a1 - e) - sq(a2 - e);
    let central = a1 + a2 + &e2 <= dec(CENTRAL_PAIR_CAP);
    seven_program(moment, rhs, central)
}

/// `M(a1, aj)`: maximize `x2/4 + x3/2 + 3x4/4 + x5` over five interval
/// masses with the five-interval second-moment row.
pub fn build_m(a1: &Rational, aj: &Rational) -> Result<LinearProgram> {
    if !in_m_range(a1, aj, &int(1)) {
        return Err(invalid(format!(
            "M needs 0.49 <= a1 <= 0.67 and 0.25 <= aj <= min(1 - a1, a1), got ({a1}, {aj})"
        )));
    }
    let part = build_five_intervals(a1, aj)?;
    let moment = part
        .intervals
        .iter()
        .map(|iv| iv.infimum() * iv.infimum())
        .collect();
    Ok(five_program(moment, int(1) - a1 * a1 - aj * aj))
}

/// `M'(a1', aj')` on the hundredth grid with margin `e`; the `x2`
/// coefficient uses `g = max(1 - a1' - aj' - 2e, 0)`.
pub fn build_m_prime(a1p: &Rational, ajp: &Rational, e: &Rational) -> Result<LinearProgram> {
    build_m_prime_on_grid(a1p, ajp, e, &dec(GRID_STEP))
}

/// `M'` on an arbitrary grid. The upper limit on `aj'` is
/// `min(1 + step - a1', a1')`.
pub fn build_m_prime_on_grid(
    a1p: &Rational,
    ajp: &Rational,
    e: &Rational,
    step: &Rational,
) -> Result<LinearProgram> {
    if !in_m_range(a1p, ajp, &(int(1) + step)) {
        return Err(invalid(format!(
            "M' needs 0.49 <= a1' <= 0.67 and 0.25 <= aj' <= min(1 + {step} - a1', a1'), got ({a1p}, {ajp})"
        )));
    }
    check_grid(&[a1p, ajp], step)?;
    check_margin(e)?;
    Ok(m_prime(a1p, ajp, e))
}

/// The clamp applied to the first moment coefficient of `M'`.
pub fn clamp_g(a1p: &Rational, ajp: &Rational, e: &Rational) -> Rational {
    let g = int(1) - a1p - ajp - e * int(2);
    if g.is_positive() {
        g
    } else {
        Rational::zero()
    }
}

fn m_prime(a1: &Rational, aj: &Rational, e: &Rational) -> LinearProgram {
    let one = Rational::one();
    let e2 = e * int(2);
    let sq = |x: Rational| &x * &x;
    let moment = vec![
        Rational::zero(),
        sq(clamp_g(a1, aj, e)),
        sq(&one - a1 + aj - &e2),
        sq(&one + a1 - aj - &e2),
        sq(&one + a1 + aj - &e2),
    ];
    five_program(moment, &one - sq(a1 - e) - sq(aj - e))
}

fn check_grid(params: &[&Rational], step: &Rational) -> Result<()> {
    if !step.is_positive() {
        return Err(invalid(format!("grid step {step} must be positive")));
    }
    match params.iter().find(|p| !is_multiple_of(p, step)) {
        Some(p) => Err(invalid(format!("{p} is not a multiple of {step}"))),
        None => Ok(()),
    }
}

fn check_margin(e: &Rational) -> Result<()> {
    if e.is_negative() {
        return Err(invalid(format!("margin {e} must be non-negative")));
    }
    Ok(())
}

/// Builds the grid program of either kind without range checks; used by
/// sweeps, which generate their own in-range grids.
pub(crate) fn grid_program(kind: ProgramKind, first: &Rational, second: &Rational, e: &Rational) -> LinearProgram {
    match kind {
        ProgramKind::L => l_prime(first, second, e),
        ProgramKind::M => m_prime(first, second, e),
    }
}

type CacheKey = (ProgramKind, Rational, Rational, Rational);

fn cache() -> &'static Mutex<HashMap<CacheKey, LPSolution>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, LPSolution>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Solves a grid program, memoized per `(kind, a1', second', e)`; the
/// prover hits the same few hundred grid points repeatedly.
pub fn solve_grid_program(kind: ProgramKind, first: &Rational, second: &Rational, e: &Rational) -> Result<LPSolution> {
    let key = (kind, first.clone(), second.clone(), e.clone());
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let lp = match kind {
        ProgramKind::L => build_l_prime(first, second, e)?,
        ProgramKind::M => build_m_prime(first, second, e)?,
    };
    let solution = solve_lp(&lp)?;
    cache().lock().expect("cache lock").insert(key, solution.clone());
    Ok(solution)
}

/// Exact program value next to the value of its rounded grid counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationReport {
    pub kind: ProgramKind,
    pub exact_params: (Rational, Rational),
    pub rounded_params: (Rational, Rational),
    pub exact_value: Rational,
    pub rounded_value: Rational,
}

/// Rounds both parameters to the nearest hundredth, solves the exact and
/// the grid program, and checks that the grid value is at least the exact
/// one.
pub fn check_rounding_domination(kind: ProgramKind, first: &Rational, second: &Rational) -> Result<DominationReport> {
    let step = dec(GRID_STEP);
    let e = dec(GRID_MARGIN);
    let rounded = (round_to_step(first, &step), round_to_step(second, &step));
    let exact_lp = match kind {
        ProgramKind::L => build_l(first, second)?,
        ProgramKind::M => build_m(first, second)?,
    };
    let exact_value = solve_lp(&exact_lp)?.optimal_value;
    let rounded_value = solve_grid_program(kind, &rounded.0, &rounded.1, &e)?.optimal_value;
    if rounded_value < exact_value {
        return Err(Error::DominationViolated(format!(
            "{kind:?}'({}, {}) = {rounded_value} < {kind:?}({first}, {second}) = {exact_value}",
            rounded.0, rounded.1
        )));
    }
    Ok(DominationReport {
        kind,
        exact_params: (first.clone(), second.clone()),
        rounded_params: rounded,
        exact_value,
        rounded_value,
    })
}
