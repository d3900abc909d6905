//! Standard normal tails with a one-sided error guarantee.
//!
//! Every consumer in the proof chain uses a tail as an upper bound, so the
//! quantity handed on is always [`TailValue::upper_bound`].

use crate::constants::{ESCAPE_LEVEL, JOINT_FAILURE_CAP, MIRROR_TAIL_FACTOR, TAIL_FACTOR};
use crate::error::{Error, Result};

/// Absolute error allowance added on top of the `erfc` evaluation. The
/// underlying routine is accurate to about one ulp, i.e. below 1e-16 in
/// absolute terms on the whole line.
pub const ERROR_BUDGET: f64 = 1e-12;

fn factor(literal: &str) -> f64 {
    literal.parse().expect("numeric constant")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailValue {
    pub point_estimate: f64,
    pub upper_bound: f64,
    pub error_budget: f64,
}

/// `Q(x) = P(N(0,1) >= x)` through `erfc(x / sqrt 2) / 2`.
pub fn normal_upper_tail(x: f64) -> TailValue {
    normal_upper_tail_with_budget(x, ERROR_BUDGET)
}

pub fn normal_upper_tail_with_budget(x: f64, error_budget: f64) -> TailValue {
    assert!(x.is_finite(), "tail point must be finite");
    assert!(error_budget >= 0.0);
    let point = (0.5 * libm::erfc(x * std::f64::consts::FRAC_1_SQRT_2)).clamp(0.0, 1.0);
    TailValue {
        point_estimate: point,
        upper_bound: (point + error_budget).min(1.0),
        error_budget,
    }
}

/// `3.18 * Q(x)` (upper bound), which dominates `P(sum eps_i a_i >= x)`
/// for any positive vector with `sum a_i^2 <= 1`.
pub fn bd_tail_bound(x: f64) -> f64 {
    factor(TAIL_FACTOR) * normal_upper_tail(x).upper_bound
}

/// `1 - 2 * bd_tail_bound(x)`: lower bound on `P(|sum eps_i b_i| < x)` for
/// a unit vector `b`.
pub fn two_sided_core_mass(x: f64) -> f64 {
    1.0 - 2.0 * bd_tail_bound(x)
}

/// `6.36 * P(|N(0,1)| > 2.5)` as an upper bound; errors unless it is below
/// 0.08.
pub fn mirror_failure_bound() -> Result<f64> {
    mirror_failure_bound_with_budget(ERROR_BUDGET)
}

pub fn mirror_failure_bound_with_budget(error_budget: f64) -> Result<f64> {
    let level: f64 = factor(ESCAPE_LEVEL);
    let two_sided = 2.0 * normal_upper_tail_with_budget(level, error_budget).upper_bound;
    let value = factor(MIRROR_TAIL_FACTOR) * two_sided;
    if value < factor(JOINT_FAILURE_CAP) {
        Ok(value)
    } else {
        Err(Error::BoundViolated(format!(
            "6.36 * P(|N| > 2.5) = {value} is not below 0.08"
        )))
    }
}
