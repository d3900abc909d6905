//! Stopping-time reflections of signed partial-sum paths, and exact
//! pathwise and distributional checks of the claims built on them.
//!
//! A reflection runs the partial sums of a chosen run of terms, stops at the
//! first step whose absolute partial sum strictly exceeds a threshold, and
//! flips every later sign. The reflected terminal is `2 X_T - X_n`.

use num::{BigInt, One};
use rayon::prelude::*;
use serde::Serialize;

use crate::constants::{
    BIG_LEADER_MIN, CENTRAL_MASS, CENTRAL_PAIR_CAP, CENTRAL_RADIUS, ESCAPE_LEVEL,
    FORWARD_STOP_LEVEL, MIDDLE_SPLIT, REMAINDER_RADIUS, SMALL_TERM_MAX, TARGET_BOUND,
};
use crate::error::{Error, Result};
use crate::rademacher::WeightVector;
use crate::rational::{dec, floor_scaled, int, Rational};

/// Largest number of path steps enumerated by the distribution checks.
pub const REFLECTION_LIMIT: usize = 20;
/// Largest `n` accepted by [`check_triple_split_lemma`].
pub const TRIPLE_SPLIT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessOrder {
    /// Terms `a_s, a_{s+1}, ..., a_n` from the start index.
    Forward,
    /// `a_1` first, then `a_n, a_{n-1}, ..., a_2`.
    ReverseAfterFirst,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdRule {
    Constant(#[serde(serialize_with = "crate::report::ser_rational")] Rational),
    /// `1 - a_1`.
    LeaderComplement,
    /// `1 + a_1 - 2 a_2`.
    LeaderGap,
    /// At step `t`, `1 - a_{n-t+1}`: the complement of the next term the
    /// reverse-order process is about to add (or of `a_1` at the last step).
    ReverseComplement,
    /// Never stops; the reflection is the identity.
    Never,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionSpec {
    pub name: &'static str,
    pub order: ProcessOrder,
    /// One-based index of the first term in the process.
    pub start_index: usize,
    pub threshold: ThresholdRule,
}

impl ReflectionSpec {
    /// Whole-sum process stopped above 0.75.
    pub fn outer() -> Self {
        Self {
            name: "outer",
            order: ProcessOrder::Forward,
            start_index: 1,
            threshold: ThresholdRule::Constant(dec(FORWARD_STOP_LEVEL)),
        }
    }

    /// Tail from `a_3`, stopped above `1 - a_1`.
    pub fn first_band() -> Self {
        Self {
            name: "first_band",
            order: ProcessOrder::Forward,
            start_index: 3,
            threshold: ThresholdRule::LeaderComplement,
        }
    }

    /// Tail from `a_3`, stopped above `1 + a_1 - 2 a_2`.
    pub fn second_band() -> Self {
        Self {
            name: "second_band",
            order: ProcessOrder::Forward,
            start_index: 3,
            threshold: ThresholdRule::LeaderGap,
        }
    }

    /// Tail from `a_4`, stopped above 0.335.
    pub fn central() -> Self {
        Self {
            name: "central",
            order: ProcessOrder::Forward,
            start_index: 4,
            threshold: ThresholdRule::Constant(dec(CENTRAL_RADIUS)),
        }
    }

    /// Reverse-order process with step-dependent thresholds.
    pub fn reverse() -> Self {
        Self {
            name: "reverse",
            order: ProcessOrder::ReverseAfterFirst,
            start_index: 1,
            threshold: ThresholdRule::ReverseComplement,
        }
    }

    pub fn identity() -> Self {
        Self {
            name: "identity",
            order: ProcessOrder::Forward,
            start_index: 1,
            threshold: ThresholdRule::Never,
        }
    }

    /// The five constructions used by the proof.
    pub fn standard() -> Vec<Self> {
        vec![
            Self::outer(),
            Self::first_band(),
            Self::second_band(),
            Self::central(),
            Self::reverse(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectedPath {
    pub original_terminal: Rational,
    pub reflected_terminal: Rational,
    /// Time index of the stop: the one-based term index for forward
    /// processes, the step count for the reverse process.
    pub stop_step: Option<usize>,
    pub stop_value: Option<Rational>,
}

/// A spec resolved against one vector: the terms in process order and the
/// integer stop limits (`|x| > limit` on the scaled partial sum).
struct Process {
    terms: Vec<i128>,
    limits: Vec<Option<i128>>,
    times: Vec<usize>,
    denom: i128,
}

#[derive(Debug, Clone, Copy)]
struct Trace {
    original: i128,
    reflected: i128,
    stop: Option<(usize, i128)>,
}

impl Process {
    fn new(a: &WeightVector, spec: &ReflectionSpec) -> Result<Self> {
        let n = a.len();
        if spec.start_index == 0 {
            return Err(Error::InvalidParameters("start index is one-based".into()));
        }
        let order: Vec<usize> = match spec.order {
            ProcessOrder::Forward => (spec.start_index - 1..n).collect(),
            ProcessOrder::ReverseAfterFirst => {
                if spec.start_index != 1 {
                    return Err(Error::InvalidParameters(
                        "the reverse-order process starts at a_1".into(),
                    ));
                }
                std::iter::once(0).chain((1..n).rev()).collect()
            }
        };
        let d = a.denom();
        let fixed = |r: Rational| Some(floor_scaled(&r, d));
        let limits = (0..order.len())
            .map(|s| match &spec.threshold {
                ThresholdRule::Never => None,
                ThresholdRule::Constant(c) => fixed(c.clone()),
                ThresholdRule::LeaderComplement => fixed(int(1) - a.weight(0)),
                ThresholdRule::LeaderGap => {
                    fixed(int(1) + a.weight(0) - a.weight(1.min(n - 1)) * int(2))
                }
                // step t = s + 1 compares against 1 - a_{n-t+1}, zero-based n - t
                ThresholdRule::ReverseComplement => fixed(int(1) - a.weight(n - s - 1)),
            })
            .collect();
        let times = match spec.order {
            ProcessOrder::Forward => order.iter().map(|i| i + 1).collect(),
            ProcessOrder::ReverseAfterFirst => (1..=order.len()).collect(),
        };
        Ok(Self {
            terms: order.iter().map(|&i| a.numerators()[i]).collect(),
            limits,
            times,
            denom: d,
        })
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    fn checked_len(&self) -> Result<usize> {
        let m = self.len();
        if m > REFLECTION_LIMIT {
            return Err(Error::DimensionTooLarge {
                n: m,
                limit: REFLECTION_LIMIT,
            });
        }
        Ok(m)
    }

    /// Bit `s` of `mask` set means the sign at step `s` is `+`.
    fn trace(&self, mask: u64) -> Trace {
        let mut x = 0i128;
        let mut stop = None;
        for (s, (&w, limit)) in self.terms.iter().zip(&self.limits).enumerate() {
            x += if mask >> s & 1 == 1 { w } else { -w };
            if stop.is_none() {
                if let Some(l) = limit {
                    if x.abs() > *l {
                        stop = Some((s, x));
                    }
                }
            }
        }
        let reflected = match stop {
            Some((_, xs)) => 2 * xs - x,
            None => x,
        };
        Trace {
            original: x,
            reflected,
            stop,
        }
    }

    fn masks(&self) -> impl ParallelIterator<Item = u64> {
        (0..1u64 << self.len()).into_par_iter()
    }

    fn ratio(&self, scaled: i128) -> Rational {
        Rational::new(BigInt::from(scaled), BigInt::from(self.denom))
    }

    fn probability(&self, count: u64) -> Rational {
        Rational::new(BigInt::from(count), BigInt::one() << self.len())
    }
}

/// Evaluates one sign pattern (`true` is `+`, indexed by term, length `n`).
/// Signs of terms outside the process are ignored.
pub fn run_reflection(a: &WeightVector, spec: &ReflectionSpec, signs: &[bool]) -> Result<ReflectedPath> {
    if signs.len() != a.len() {
        return Err(Error::InvalidParameters(format!(
            "expected {} signs, got {}",
            a.len(),
            signs.len()
        )));
    }
    let process = Process::new(a, spec)?;
    let n = a.len();
    let index_of_step = |s: usize| match spec.order {
        ProcessOrder::Forward => spec.start_index - 1 + s,
        ProcessOrder::ReverseAfterFirst if s == 0 => 0,
        ProcessOrder::ReverseAfterFirst => n - s,
    };
    let mask = (0..process.len())
        .filter(|&s| signs[index_of_step(s)])
        .fold(0u64, |m, s| m | 1 << s);
    let t = process.trace(mask);
    Ok(ReflectedPath {
        original_terminal: process.ratio(t.original),
        reflected_terminal: process.ratio(t.reflected),
        stop_step: t.stop.map(|(s, _)| process.times[s]),
        stop_value: t.stop.map(|(_, x)| process.ratio(x)),
    })
}

/// Sign pattern for the terms of `a` that flips every process step after
/// the stop, so that its original terminal is the reflected terminal of
/// `signs`.
pub fn reflect_signs(a: &WeightVector, spec: &ReflectionSpec, signs: &[bool]) -> Result<Vec<bool>> {
    let path = run_reflection(a, spec, signs)?;
    let Some(stop) = path.stop_step else {
        return Ok(signs.to_vec());
    };
    let n = a.len();
    let mut out = signs.to_vec();
    match spec.order {
        ProcessOrder::Forward => out[stop..].iter_mut().for_each(|s| *s = !*s),
        // steps after `stop` are the terms a_{n-stop}, ..., a_2 (one-based)
        ProcessOrder::ReverseAfterFirst => out[1..n - stop + 1].iter_mut().for_each(|s| *s = !*s),
    }
    Ok(out)
}

/// Exact equality of the laws of the original and reflected terminals over
/// every sign pattern of the process.
pub fn check_distribution_equality(a: &WeightVector, spec: &ReflectionSpec) -> Result<bool> {
    let process = Process::new(a, spec)?;
    process.checked_len()?;
    let (mut original, mut reflected): (Vec<i128>, Vec<i128>) = process
        .masks()
        .map(|m| {
            let t = process.trace(m);
            (t.original, t.reflected)
        })
        .unzip();
    original.par_sort_unstable();
    reflected.par_sort_unstable();
    Ok(original == reflected)
}

/// Exact `P(|original| > level and |reflected| > level)`.
pub fn joint_failure_probability(a: &WeightVector, spec: &ReflectionSpec, level: &Rational) -> Result<Rational> {
    let process = Process::new(a, spec)?;
    process.checked_len()?;
    let l = floor_scaled(level, process.denom);
    let count = process
        .masks()
        .filter(|&m| {
            let t = process.trace(m);
            t.original.abs() > l && t.reflected.abs() > l
        })
        .count();
    Ok(process.probability(count as u64))
}

fn out_of_range(what: &str, a: &WeightVector) -> Error {
    Error::OutOfCaseRange(format!("{what}: {:?}", a.weights_f64()))
}

/// Whether the escape dichotomy is claimed for this spec and vector: the
/// outer spec needs `a_1 + a_2 <= 1` and `a_3 <= 0.25`, the reverse spec
/// `0.49 <= a_1 <= 0.67`.
fn escape_range(a: &WeightVector, spec: &ReflectionSpec) -> Result<()> {
    let w = a.weights();
    let ok = match (spec.order, &spec.threshold) {
        (ProcessOrder::Forward, ThresholdRule::Constant(c)) if spec.start_index == 1 && *c == dec(FORWARD_STOP_LEVEL) => {
            let pair = w.iter().take(2).sum::<Rational>() <= int(1);
            pair && w.get(2).is_none_or(|a3| *a3 <= dec(SMALL_TERM_MAX))
        }
        (ProcessOrder::ReverseAfterFirst, ThresholdRule::ReverseComplement) => {
            dec(MIDDLE_SPLIT) <= w[0] && w[0] <= dec(BIG_LEADER_MIN)
        }
        _ => return Err(Error::OutOfCaseRange(format!("no escape claim for the {} reflection", spec.name))),
    };
    if ok {
        Ok(())
    } else {
        Err(out_of_range(&format!("outside the range of the {} escape claim", spec.name), a))
    }
}

/// True iff every sign pattern with `|original| > 1` and `|reflected| > 1`
/// has `max(|original|, |reflected|) > 2.5`.
pub fn check_escape_implication(a: &WeightVector, spec: &ReflectionSpec) -> Result<bool> {
    Ok(escape_violations(a, spec)? == 0)
}

/// Number of sign patterns breaking the escape dichotomy.
pub fn escape_violations(a: &WeightVector, spec: &ReflectionSpec) -> Result<u64> {
    escape_range(a, spec)?;
    let process = Process::new(a, spec)?;
    process.checked_len()?;
    let one = floor_scaled(&int(1), process.denom);
    let escape = floor_scaled(&dec(ESCAPE_LEVEL), process.denom);
    Ok(process
        .masks()
        .filter(|&m| {
            let t = process.trace(m);
            let (x, y) = (t.original.abs(), t.reflected.abs());
            x > one && y > one && x.max(y) <= escape
        })
        .count() as u64)
}

/// Outcome of the pathwise band check: at most one of `|S_n|`, `|U_n|` may
/// fall in the band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandExclusion {
    /// Open lower and closed upper end of the band.
    pub band: (Rational, Rational),
    pub patterns: u64,
    /// Patterns with both terminals in the band.
    pub violations: u64,
}

impl BandExclusion {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

fn in_mid1_range(a: &WeightVector) -> bool {
    a.len() >= 3 && a.weight(2) >= dec(SMALL_TERM_MAX) && a.weight(0) <= dec(MIDDLE_SPLIT)
}

/// For the two banded reflections of the tail from `a_3`: the band
/// `(1 - a_1 + a_2, 3 - 3a_1 + a_2]` for the `1 - a_1` threshold and
/// `(1 + a_1 - a_2, 3 + 3a_1 - 5a_2]` for the `1 + a_1 - 2a_2` threshold.
pub fn check_band_exclusion(a: &WeightVector, spec: &ReflectionSpec) -> Result<BandExclusion> {
    if !in_mid1_range(a) {
        return Err(out_of_range("band exclusion needs 0.25 <= a3 <= a1 <= 0.49", a));
    }
    let (a1, a2) = (a.weight(0), a.weight(1));
    let band = match (&spec.threshold, spec.start_index) {
        (ThresholdRule::LeaderComplement, 3) => {
            (int(1) - &a1 + &a2, int(3) - int(3) * &a1 + &a2)
        }
        (ThresholdRule::LeaderGap, 3) => {
            (int(1) + &a1 - &a2, int(3) + int(3) * &a1 - int(5) * &a2)
        }
        _ => return Err(Error::OutOfCaseRange(format!("no band claim for the {} reflection", spec.name))),
    };
    let process = Process::new(a, spec)?;
    process.checked_len()?;
    let (lo, hi) = (floor_scaled(&band.0, process.denom), floor_scaled(&band.1, process.denom));
    let inside = |x: i128| lo < x.abs() && x.abs() <= hi;
    let violations = process
        .masks()
        .filter(|&m| {
            let t = process.trace(m);
            inside(t.original) && inside(t.reflected)
        })
        .count() as u64;
    Ok(BandExclusion {
        band,
        patterns: 1 << process.len(),
        violations,
    })
}

/// Result of the three-way split of `S = sum_{i>=3} eps_i a_i` into
/// `S_a = eps_3 a_3`, the run `S_b` from `a_4` up to the first step whose
/// partial sum exceeds 0.335, and the remainder `S_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSplitReport {
    pub patterns: u64,
    /// Patterns with `|S_c| <= 0.91` for which no sign choice brings the
    /// recombined sum within 0.335.
    pub pathwise_failures: u64,
    /// Whether every one of the eight recombinations has the law of `S`.
    pub laws_equal: bool,
    /// `P(|S_c| <= 0.91)`, compared against 0.46.
    pub remainder_mass: Rational,
    /// `P(|S| <= 0.335)`, compared against 0.115.
    pub central_mass: Rational,
    /// `P(|S| <= 1 - a_1 - a_2)`.
    pub first_interval_mass: Rational,
}

impl TripleSplitReport {
    pub fn holds(&self) -> bool {
        self.pathwise_failures == 0
            && self.laws_equal
            && self.remainder_mass >= dec(TARGET_BOUND)
            && self.central_mass >= dec(CENTRAL_MASS)
            && self.first_interval_mass >= dec(CENTRAL_MASS)
    }
}

/// Checks the central-mass argument on the tail from `a_3` by total
/// enumeration. Requires `0.25 <= a_3 <= a_1 <= 0.49`,
/// `a_1 + a_2 <= 0.665` and `n <= 16`.
pub fn check_triple_split_lemma(a: &WeightVector) -> Result<TripleSplitReport> {
    let n = a.len();
    if n > TRIPLE_SPLIT_LIMIT {
        return Err(Error::DimensionTooLarge {
            n,
            limit: TRIPLE_SPLIT_LIMIT,
        });
    }
    if !in_mid1_range(a) {
        return Err(out_of_range("triple split needs 0.25 <= a3 <= a1 <= 0.49", a));
    }
    if a.weight(0) + a.weight(1) > dec(CENTRAL_PAIR_CAP) {
        return Err(out_of_range("triple split needs a1 + a2 <= 0.665", a));
    }
    let d = a.denom();
    let terms = &a.numerators()[2..];
    let m = terms.len();
    let radius = floor_scaled(&dec(CENTRAL_RADIUS), d);
    let remainder = floor_scaled(&dec(REMAINDER_RADIUS), d);
    let first = floor_scaled(&(int(1) - a.weight(0) - a.weight(1)), d);

    let split = |mask: u64| -> [i128; 3] {
        let signed = |s: usize| if mask >> s & 1 == 1 { terms[s] } else { -terms[s] };
        let sa = signed(0);
        let (mut sb, mut sc, mut stopped) = (0i128, 0i128, false);
        for s in 1..m {
            if stopped {
                sc += signed(s);
            } else {
                sb += signed(s);
                stopped = sb.abs() > radius;
            }
        }
        [sa, sb, sc]
    };
    let taus: Vec<[i128; 3]> = (0..8)
        .map(|k| [0, 1, 2].map(|b| if k >> b & 1 == 1 { -1 } else { 1 }))
        .collect();
    let combine = |p: &[i128; 3], tau: &[i128; 3]| tau[0] * p[0] + tau[1] * p[1] + tau[2] * p[2];

    let parts: Vec<[i128; 3]> = (0..1u64 << m).into_par_iter().map(split).collect();
    let pathwise_failures = parts
        .par_iter()
        .filter(|p| p[2].abs() <= remainder && taus.iter().all(|t| combine(p, t).abs() > radius))
        .count() as u64;
    let mut base: Vec<i128> = parts.iter().map(|p| p[0] + p[1] + p[2]).collect();
    base.par_sort_unstable();
    let laws_equal = taus.par_iter().all(|tau| {
        let mut flipped: Vec<i128> = parts.iter().map(|p| combine(p, tau)).collect();
        flipped.par_sort_unstable();
        flipped == base
    });
    let count = |pred: &dyn Fn(&[i128; 3]) -> bool| parts.iter().filter(|p| pred(p)).count() as u64;
    let total = BigInt::one() << m;
    let prob = |c: u64| Rational::new(BigInt::from(c), total.clone());
    Ok(TripleSplitReport {
        patterns: 1 << m,
        pathwise_failures,
        laws_equal,
        remainder_mass: prob(count(&|p| p[2].abs() <= remainder)),
        central_mass: prob(count(&|p| (p[0] + p[1] + p[2]).abs() <= radius)),
        first_interval_mass: prob(count(&|p| (p[0] + p[1] + p[2]).abs() <= first)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn halves() -> WeightVector {
        WeightVector::new(&vec![ratio(1, 2); 4]).unwrap()
    }

    fn thirds() -> WeightVector {
        WeightVector::new(&vec![ratio(1, 3); 9]).unwrap()
    }

    #[test]
    fn outer_path_on_halves() {
        let a = halves();
        let p = run_reflection(&a, &ReflectionSpec::outer(), &[true; 4]).unwrap();
        assert_eq!(p.stop_step, Some(2));
        assert_eq!(p.stop_value, Some(int(1)));
        assert_eq!(p.original_terminal, int(2));
        assert_eq!(p.reflected_terminal, int(0));

        let p = run_reflection(&a, &ReflectionSpec::outer(), &[true, false, true, false]).unwrap();
        assert_eq!(p.stop_step, None);
        assert_eq!(p.reflected_terminal, p.original_terminal);
        assert!(run_reflection(&a, &ReflectionSpec::outer(), &[true; 3]).is_err());
    }

    #[test]
    fn reflection_is_an_involution() {
        let a = thirds();
        for spec in ReflectionSpec::standard() {
            for mask in 0..1u32 << 9 {
                let signs: Vec<bool> = (0..9).map(|i| mask >> i & 1 == 1).collect();
                let path = run_reflection(&a, &spec, &signs).unwrap();
                let flipped = reflect_signs(&a, &spec, &signs).unwrap();
                let again = run_reflection(&a, &spec, &flipped).unwrap();
                assert_eq!(again.original_terminal, path.reflected_terminal, "{}", spec.name);
                assert_eq!(again.reflected_terminal, path.original_terminal, "{}", spec.name);
                assert_eq!(again.stop_step, path.stop_step);
            }
        }
    }

    #[test]
    fn reverse_order_indexing() {
        // a = (1/2, 1/2, 1/2, 1/2): thresholds are 1/2 at every step
        let a = halves();
        let spec = ReflectionSpec::reverse();
        let p = run_reflection(&a, &spec, &[true, false, true, true]).unwrap();
        // A_1 = 1/2, A_2 = 1 stops (a_4 added second)
        assert_eq!(p.stop_step, Some(2));
        assert_eq!(p.original_terminal, int(1));
        assert_eq!(p.reflected_terminal, int(1));
        // uneven weights: (3/5, 12/25, 16/25 ...) check the term order directly
        let b = WeightVector::new(&[ratio(4, 5), ratio(12, 25), ratio(9, 25)]).unwrap();
        let process = Process::new(&b, &spec).unwrap();
        assert_eq!(process.terms, vec![20, 9, 12]);
        // step 1: 1 - a_3, step 2: 1 - a_2, step 3: 1 - a_1
        assert_eq!(process.limits, vec![Some(16), Some(13), Some(5)]);
    }

    #[test]
    fn distribution_equality_examples() {
        assert!(check_distribution_equality(&halves(), &ReflectionSpec::outer()).unwrap());
        assert!(check_distribution_equality(&thirds(), &ReflectionSpec::first_band()).unwrap());
        for spec in ReflectionSpec::standard() {
            assert!(check_distribution_equality(&thirds(), &spec).unwrap(), "{}", spec.name);
        }
        assert!(check_distribution_equality(&thirds(), &ReflectionSpec::identity()).unwrap());
        let big = WeightVector::new(&vec![ratio(1, 5); 25]).unwrap();
        assert!(matches!(
            check_distribution_equality(&big, &ReflectionSpec::outer()),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn joint_failure_examples() {
        let a = halves();
        assert_eq!(joint_failure_probability(&a, &ReflectionSpec::outer(), &int(1)).unwrap(), int(0));
        assert_eq!(joint_failure_probability(&a, &ReflectionSpec::outer(), &int(2)).unwrap(), int(0));
        // identity: both terminals coincide, so this is P(|S| > 1/2)
        let p = joint_failure_probability(&a, &ReflectionSpec::identity(), &ratio(1, 2)).unwrap();
        assert_eq!(p, ratio(10, 16));
    }

    #[test]
    fn escape_examples() {
        assert!(check_escape_implication(&halves(), &ReflectionSpec::reverse()).unwrap());
        assert!(matches!(
            check_escape_implication(&halves(), &ReflectionSpec::outer()),
            Err(Error::OutOfCaseRange(_))
        ));
        assert!(matches!(
            check_escape_implication(&thirds(), &ReflectionSpec::central()),
            Err(Error::OutOfCaseRange(_))
        ));
        let small = WeightVector::new(&vec![ratio(1, 4); 16]).unwrap();
        assert!(check_escape_implication(&small, &ReflectionSpec::outer()).unwrap());
    }

    #[test]
    fn bands_on_thirds() {
        for spec in [ReflectionSpec::first_band(), ReflectionSpec::second_band()] {
            let r = check_band_exclusion(&thirds(), &spec).unwrap();
            assert!(r.holds(), "{}", spec.name);
            assert_eq!(r.patterns, 128);
        }
        assert!(check_band_exclusion(&halves(), &ReflectionSpec::first_band()).is_err());
    }

    #[test]
    fn triple_split_range() {
        // 1/3 + 1/3 > 0.665
        assert!(matches!(check_triple_split_lemma(&thirds()), Err(Error::OutOfCaseRange(_))));
        let mut direction = vec![0.33; 3];
        direction.extend([0.31; 7]);
        let (numerators, denom) = crate::rademacher::rationalize_on_sphere(&direction, 10_000);
        let a = WeightVector::from_scaled(numerators, denom).unwrap();
        assert!(a.weight(0) + a.weight(1) <= dec(CENTRAL_PAIR_CAP));
        let r = check_triple_split_lemma(&a).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.pathwise_failures, 0);
    }
}
