//! Seeded generators of exact rational unit vectors, optionally steered
//! into one proof case.
//!
//! A direction is drawn in floating point, then projected onto an exact
//! rational point of the sphere; membership in the requested case is
//! decided afterwards on the exact vector, so targeting only affects
//! efficiency, never correctness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::prover::{classify, split_big_small, CaseLabel};
use crate::rademacher::{rationalize_on_sphere, WeightVector};
use crate::rational::dec;

/// Grid denominator of the stereographic coordinates.
pub const SAMPLE_PRECISION: i64 = 10_000;
const MAX_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleTarget {
    /// Unstructured directions of random length.
    Any,
    /// A uniformly chosen structured target per draw.
    Mixed,
    Base,
    BigA1,
    SmallA,
    Mid1,
    /// Second middle case with a small term of size at least 0.25.
    Mid2WithSmallTerm,
    /// Second middle case whose small terms are all below 0.25.
    Mid2Reflection,
}

impl SampleTarget {
    const STRUCTURED: [SampleTarget; 7] = [
        SampleTarget::Any,
        SampleTarget::Base,
        SampleTarget::BigA1,
        SampleTarget::SmallA,
        SampleTarget::Mid1,
        SampleTarget::Mid2WithSmallTerm,
        SampleTarget::Mid2Reflection,
    ];

    /// Smallest `n` the target admits. The small-tail case needs ten
    /// terms: with `a_1 < 0.67` and `a_1 + a_2 <= 1` at least 0.44 of the
    /// mass sits in terms of size at most 0.25.
    pub fn min_len(self) -> usize {
        match self {
            SampleTarget::Any | SampleTarget::Mixed | SampleTarget::Base => 1,
            SampleTarget::SmallA => 10,
            SampleTarget::Mid1 => 5,
            _ => 4,
        }
    }

    /// Exact membership test.
    pub fn accepts(self, a: &WeightVector) -> bool {
        let case = classify(a);
        let first_small_is_large = || {
            split_big_small(a).is_ok_and(|s| {
                s.small_terms
                    .first()
                    .is_some_and(|&i| a.weight(i - 1) >= dec("0.25"))
            })
        };
        match self {
            SampleTarget::Any | SampleTarget::Mixed => true,
            SampleTarget::Base => case == CaseLabel::BaseSmallN,
            SampleTarget::BigA1 => case == CaseLabel::BigA1,
            SampleTarget::SmallA => case == CaseLabel::SmallA,
            SampleTarget::Mid1 => case == CaseLabel::Mid1,
            SampleTarget::Mid2WithSmallTerm => case == CaseLabel::Mid2 && first_small_is_large(),
            SampleTarget::Mid2Reflection => case == CaseLabel::Mid2 && !first_small_is_large(),
        }
    }
}

pub struct VectorSampler {
    rng: ChaCha8Rng,
    precision: i64,
}

impl VectorSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_precision(seed, SAMPLE_PRECISION)
    }

    pub fn with_precision(seed: u64, precision: i64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            precision,
        }
    }

    /// Exact unit vector near `direction`, or `None` if the projection
    /// rounds every coordinate but one away.
    pub fn project(&self, direction: &[f64]) -> Option<WeightVector> {
        let (numerators, denom) = rationalize_on_sphere(direction, self.precision);
        WeightVector::from_scaled(numerators, denom).ok()
    }

    /// One vector with `1 <= n <= max_n` from the requested target.
    pub fn sample(&mut self, target: SampleTarget, max_n: usize) -> Result<WeightVector> {
        let target = match target {
            SampleTarget::Mixed => {
                let feasible: Vec<_> = SampleTarget::STRUCTURED
                    .iter()
                    .copied()
                    .filter(|t| t.min_len() <= max_n)
                    .collect();
                *feasible.choose(&mut self.rng).ok_or_else(|| too_short(target, max_n))?
            }
            t => t,
        };
        if max_n < target.min_len() {
            return Err(too_short(target, max_n));
        }
        for _ in 0..MAX_ATTEMPTS {
            let Some(direction) = self.propose(target, max_n) else {
                continue;
            };
            if let Some(a) = self.project(&direction) {
                if a.len() <= max_n && target.accepts(&a) {
                    return Ok(a);
                }
            }
        }
        Err(Error::InvalidParameters(format!(
            "no {target:?} vector with n <= {max_n} found"
        )))
    }

    pub fn sample_many(&mut self, target: SampleTarget, max_n: usize, count: usize) -> Result<Vec<WeightVector>> {
        (0..count).map(|_| self.sample(target, max_n)).collect()
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            lo
        } else {
            self.rng.gen_range(lo..hi)
        }
    }

    /// Appends terms no larger than `cap` whose squares add up to the mass
    /// left by `head`.
    fn fill(&mut self, mut head: Vec<f64>, cap: f64, max_n: usize) -> Option<Vec<f64>> {
        let rest = 1.0 - head.iter().map(|x| x * x).sum::<f64>();
        if rest < 0.0 {
            return None;
        }
        if rest < 1e-9 {
            return Some(head);
        }
        let fewest = (rest / (cap * cap)).ceil().max(1.0) as usize;
        let room = max_n.checked_sub(head.len())?;
        if fewest > room {
            return None;
        }
        let m = self.rng.gen_range(fewest..=room);
        // Draws in [floor, 1] keep every scaled term under the cap.
        let floor = (rest / (m as f64 * cap * cap)).sqrt().max(0.1);
        let spread = if floor < 0.9 { self.uniform(floor, 0.9) } else { floor.min(1.0) };
        let raw: Vec<f64> = (0..m).map(|_| self.uniform(spread, 1.0)).collect();
        let scale = (rest / raw.iter().map(|u| u * u).sum::<f64>()).sqrt();
        let tail: Vec<f64> = raw.iter().map(|u| u * scale).collect();
        if tail.iter().any(|x| *x > cap) {
            return None;
        }
        head.extend(tail);
        Some(head)
    }

    fn propose(&mut self, target: SampleTarget, max_n: usize) -> Option<Vec<f64>> {
        match target {
            SampleTarget::Any | SampleTarget::Mixed => {
                let n = self.rng.gen_range(1..=max_n);
                let power = [1.0, 2.0, 4.0][self.rng.gen_range(0..3)];
                let mut d: Vec<f64> = (0..n).map(|_| self.uniform(0.01, 1.0).powf(power)).collect();
                if self.rng.gen_bool(0.25) {
                    d[0] *= self.uniform(1.0, 6.0);
                }
                Some(d)
            }
            SampleTarget::Base => {
                let n = self.rng.gen_range(1..=max_n.min(3));
                Some((0..n).map(|_| self.uniform(0.05, 1.0)).collect())
            }
            SampleTarget::BigA1 => {
                let a1 = self.uniform(0.672, 0.995);
                self.fill(vec![a1], a1, max_n)
            }
            SampleTarget::SmallA => {
                let cap = self.uniform(0.17, 0.248);
                let room = (max_n - 2) as f64 * cap * cap;
                for _ in 0..64 {
                    let a1 = self.uniform(0.3, 0.665);
                    let a2 = self.uniform(0.2, a1.min(0.995 - a1));
                    if a1 * a1 + a2 * a2 + room >= 1.0 {
                        return self.fill(vec![a1, a2], cap.min(a2), max_n);
                    }
                }
                None
            }
            SampleTarget::Mid1 => {
                let a1 = self.uniform(0.262, 0.488);
                let a2 = self.uniform(0.256, a1);
                let a3 = self.uniform(0.256, a2);
                self.fill(vec![a1, a2, a3], a3, max_n)
            }
            SampleTarget::Mid2WithSmallTerm => {
                let a1 = self.uniform(0.492, 0.668);
                let mut head = vec![a1];
                let bigs = self.rng.gen_range(0..=2);
                for _ in 0..bigs {
                    head.push(self.uniform(1.003 - a1, a1));
                }
                let aj = self.uniform(0.253, (0.997 - a1).min(a1));
                head.push(aj);
                self.fill(head, aj, max_n)
            }
            SampleTarget::Mid2Reflection => {
                let a1 = self.uniform(0.492, 0.668);
                let mut head = vec![a1];
                let bigs = self.rng.gen_range(1..=3);
                for _ in 0..bigs {
                    head.push(self.uniform(1.003 - a1, a1));
                }
                let cap = self.uniform(0.05, 0.247);
                self.fill(head, cap, max_n)
            }
        }
    }
}

fn too_short(target: SampleTarget, max_n: usize) -> Error {
    Error::InvalidParameters(format!("{target:?} needs n >= {}, max is {max_n}", target.min_len()))
}
