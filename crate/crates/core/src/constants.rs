//! Every numeric constant used by the proof chain, as exact decimal
//! literals. Use [`value`] or [`crate::rational::dec`] to get the rational.

use crate::rational::{dec, Rational};

/// Factor in the sub-Gaussian comparison `P(S >= x) <= 3.18 P(N(0,1) >= x)`.
pub const TAIL_FACTOR: &str = "3.18";
/// Twice [`TAIL_FACTOR`]; multiplies the two-sided normal tail when two
/// equally distributed terminals are union-bounded.
pub const MIRROR_TAIL_FACTOR: &str = "6.36";
/// One of two mirrored terminals must exceed this level when both exceed 1.
pub const ESCAPE_LEVEL: &str = "2.5";
/// Cap on `P(|X_n| > 1 and |Y_n| > 1)` for both mirroring cases.
pub const JOINT_FAILURE_CAP: &str = "0.08";
/// Stopping level of the forward mirroring process.
pub const FORWARD_STOP_LEVEL: &str = "0.75";

/// Leading weight from which the dominant-term argument applies.
pub const BIG_LEADER_MIN: &str = "0.67";
/// `1 + 0.67`: radius the remainder must stay within.
pub const BIG_LEADER_RADIUS: &str = "1.67";
/// Floor of `1.67 / sqrt(1 - 0.67^2)`.
pub const BIG_LEADER_TAIL_POINT: &str = "2.24";
/// Reported value of `1 - 3.18 P(|N(0,1)| > 2.24)`.
pub const BIG_LEADER_CORE_MASS: &str = "0.9202";

/// Case boundaries on the weights.
pub const SMALL_TERM_MAX: &str = "0.25";
pub const MIDDLE_SPLIT: &str = "0.49";

/// Target lower bound on `P(|S| <= 1)`.
pub const TARGET_BOUND: &str = "0.46";
/// Cap on every grid LP optimum.
pub const LP_CAP: &str = "0.54";
/// Guaranteed central mass `p_1` when `a_1 + a_2 <= 0.665`.
pub const CENTRAL_MASS: &str = "0.115";
pub const CENTRAL_PAIR_CAP: &str = "0.665";
/// `1 - 0.665`: radius of the central interval used for `p_1`.
pub const CENTRAL_RADIUS: &str = "0.335";
/// Radius the post-stop remainder stays within with probability >= 0.46.
pub const REMAINDER_RADIUS: &str = "0.91";

/// Grid spacing of the discretized programs and the matching margin.
pub const GRID_STEP: &str = "0.01";
pub const GRID_MARGIN: &str = "0.005";

/// `(name, literal, role)` for auditing; kept in sync with the items above.
pub const TABLE: &[(&str, &str, &str)] = &[
    ("TAIL_FACTOR", TAIL_FACTOR, "sub-Gaussian tail comparison factor"),
    ("MIRROR_TAIL_FACTOR", MIRROR_TAIL_FACTOR, "union bound over two mirrored terminals"),
    ("ESCAPE_LEVEL", ESCAPE_LEVEL, "escape level of the mirrored pair"),
    ("JOINT_FAILURE_CAP", JOINT_FAILURE_CAP, "cap on joint failure of the mirrored pair"),
    ("FORWARD_STOP_LEVEL", FORWARD_STOP_LEVEL, "forward process stopping level"),
    ("BIG_LEADER_MIN", BIG_LEADER_MIN, "dominant leading weight threshold"),
    ("BIG_LEADER_RADIUS", BIG_LEADER_RADIUS, "remainder radius for a dominant leader"),
    ("BIG_LEADER_TAIL_POINT", BIG_LEADER_TAIL_POINT, "normalized remainder radius floor"),
    ("BIG_LEADER_CORE_MASS", BIG_LEADER_CORE_MASS, "reported two-sided core mass at 2.24"),
    ("SMALL_TERM_MAX", SMALL_TERM_MAX, "small third weight / small-term threshold"),
    ("MIDDLE_SPLIT", MIDDLE_SPLIT, "boundary between the two middle cases"),
    ("TARGET_BOUND", TARGET_BOUND, "certified lower bound"),
    ("LP_CAP", LP_CAP, "cap on grid LP optima"),
    ("CENTRAL_MASS", CENTRAL_MASS, "central interval mass lower bound"),
    ("CENTRAL_PAIR_CAP", CENTRAL_PAIR_CAP, "a1 + a2 cap enabling the central mass row"),
    ("CENTRAL_RADIUS", CENTRAL_RADIUS, "central interval radius"),
    ("REMAINDER_RADIUS", REMAINDER_RADIUS, "post-stop remainder radius"),
    ("GRID_STEP", GRID_STEP, "grid spacing of discretized programs"),
    ("GRID_MARGIN", GRID_MARGIN, "rounding margin e"),
];

/// Exact value of a named constant from [`TABLE`].
pub fn value(name: &str) -> Option<Rational> {
    TABLE
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, literal, _)| dec(literal))
}
