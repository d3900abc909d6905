//! Interval partitions of the half-line used to condition on the size of
//! a residual sum, with exact per-interval probabilities.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rademacher::{residual_distribution, suffix_second_moment, SumDistribution, WeightVector};
use crate::rational::{ceil_scaled, floor_scaled, int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lower: Rational,
    /// `None` means unbounded above.
    pub upper: Option<Rational>,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl Interval {
    fn left_open(lower: Rational, upper: Option<Rational>) -> Self {
        Self {
            lower,
            upper,
            lower_closed: false,
            upper_closed: true,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lower_closed { x >= &self.lower } else { x > &self.lower };
        let below = match &self.upper {
            None => true,
            Some(u) if self.upper_closed => x <= u,
            Some(u) => x < u,
        };
        above && below
    }

    /// Membership of `m / denom` for a non-negative integer `m`.
    fn contains_scaled(&self, m: i128, denom: i128) -> bool {
        let above = if self.lower_closed {
            m >= ceil_scaled(&self.lower, denom)
        } else {
            m > floor_scaled(&self.lower, denom)
        };
        let below = match &self.upper {
            None => true,
            Some(u) if self.upper_closed => m <= floor_scaled(u, denom),
            Some(u) => m < ceil_scaled(u, denom),
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        match &self.upper {
            None => false,
            Some(u) => u < &self.lower || (u == &self.lower && !(self.lower_closed && self.upper_closed)),
        }
    }

    /// The infimum, which is the lower endpoint formula even for an empty
    /// interval.
    pub fn infimum(&self) -> &Rational {
        &self.lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PartitionKind {
    /// Conditioning on `|sum_{i>=3} eps_i a_i|` with `a_1, a_2` fixed.
    Seven,
    /// Conditioning on the sum without `a_1` and a small term `a_j`.
    Five,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPartition {
    pub kind: PartitionKind,
    pub intervals: Vec<Interval>,
    /// `P(|eps_1 a_1 + eps_2 a_2 + S| > 1 | |S| in I_k)` for each interval.
    pub exceedance_weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionProbabilities {
    pub p: Vec<Rational>,
}

impl PartitionProbabilities {
    pub fn total(&self) -> Rational {
        self.p.iter().sum()
    }

    /// Sum of `p_k` for one-based `k` in `from..=to`.
    pub fn band(&self, from: usize, to: usize) -> Rational {
        self.p[from - 1..to].iter().sum()
    }
}

fn quarters(weights: &[i64]) -> Vec<Rational> {
    weights.iter().map(|w| ratio(*w, 4)).collect()
}

fn from_endpoints(kind: PartitionKind, ends: Vec<Rational>, weights: Vec<Rational>) -> Result<IntervalPartition> {
    if ends[0].is_negative() {
        return Err(Error::InvalidParameters(format!(
            "first endpoint {} is negative",
            ends[0]
        )));
    }
    if let Some(w) = ends.windows(2).find(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameters(format!(
            "endpoints out of order: {} > {}",
            w[0], w[1]
        )));
    }
    let mut intervals = vec![Interval {
        lower: Rational::zero(),
        upper: Some(ends[0].clone()),
        lower_closed: true,
        upper_closed: true,
    }];
    for w in ends.windows(2) {
        intervals.push(Interval::left_open(w[0].clone(), Some(w[1].clone())));
    }
    intervals.push(Interval::left_open(ends.last().unwrap().clone(), None));
    Ok(IntervalPartition {
        kind,
        intervals,
        exceedance_weights: weights,
    })
}

fn check_pair(big: &Rational, other: &Rational, name: &str) -> Result<()> {
    if !other.is_positive() || other > big {
        return Err(Error::InvalidParameters(format!(
            "need 0 < {name} <= a1, got a1 = {big}, {name} = {other}"
        )));
    }
    Ok(())
}

/// Seven intervals with endpoints `1-a1-a2, 1-a1+a2, 1+a1-a2, 1+a1+a2,
/// 3-3a1+a2, 3+3a1-5a2` and exceedance weights `0, 1/4, 1/2, 3/4, 1, 1, 1`.
pub fn build_seven_intervals(a1: &Rational, a2: &Rational) -> Result<IntervalPartition> {
    check_pair(a1, a2, "a2")?;
    let one = Rational::one();
    let three = int(3);
    let ends = vec![
        &one - a1 - a2,
        &one - a1 + a2,
        &one + a1 - a2,
        &one + a1 + a2,
        &three - int(3) * a1 + a2,
        &three + int(3) * a1 - int(5) * a2,
    ];
    from_endpoints(PartitionKind::Seven, ends, quarters(&[0, 1, 2, 3, 4, 4, 4]))
}

/// Five intervals with endpoints `1-a1-aj, 1-a1+aj, 1+a1-aj, 1+a1+aj` and
/// exceedance weights `0, 1/4, 1/2, 3/4, 1`.
pub fn build_five_intervals(a1: &Rational, aj: &Rational) -> Result<IntervalPartition> {
    check_pair(a1, aj, "aj")?;
    let one = Rational::one();
    let ends = vec![&one - a1 - aj, &one - a1 + aj, &one + a1 - aj, &one + a1 + aj];
    from_endpoints(PartitionKind::Five, ends, quarters(&[0, 1, 2, 3, 4]))
}

/// `p_k = P(|S| in I_k)` summed atom by atom.
pub fn interval_probabilities(tail: &SumDistribution, part: &IntervalPartition) -> PartitionProbabilities {
    let mut counts = vec![0u64; part.intervals.len()];
    for &(v, c) in tail.scaled_atoms() {
        let k = part
            .intervals
            .iter()
            .position(|iv| iv.contains_scaled(v.abs(), tail.denom()))
            .expect("partition covers the half-line");
        counts[k] += c;
    }
    PartitionProbabilities {
        p: counts.into_iter().map(|c| tail.probability_of_count(c)).collect(),
    }
}

/// `sum_k w_k p_k`, which equals `P(|sum eps_i a_i| > 1)`.
pub fn exceedance_probability(p: &PartitionProbabilities, part: &IntervalPartition) -> Rational {
    p.p.iter().zip(&part.exceedance_weights).map(|(p, w)| p * w).sum()
}

/// `sum_k p_k (inf I_k)^2`, a lower bound on `E[S^2]`.
pub fn second_moment_lhs(p: &PartitionProbabilities, part: &IntervalPartition) -> Rational {
    p.p.iter()
        .zip(&part.intervals)
        .map(|(p, iv)| p * iv.infimum() * iv.infimum())
        .sum()
}

/// Everything derived from one partition of one vector.
#[derive(Debug, Clone)]
pub struct PartitionAnalysis {
    pub partition: IntervalPartition,
    pub probabilities: PartitionProbabilities,
    pub exceedance: Rational,
    pub moment_lhs: Rational,
    /// `E[S^2]` of the residual sum.
    pub residual_moment: Rational,
}

fn analyse(a: &WeightVector, partition: IntervalPartition, excluded: &[usize]) -> Result<PartitionAnalysis> {
    let tail = residual_distribution(a, excluded)?;
    let probabilities = interval_probabilities(&tail, &partition);
    let residual_moment = tail.second_moment();
    Ok(PartitionAnalysis {
        exceedance: exceedance_probability(&probabilities, &partition),
        moment_lhs: second_moment_lhs(&probabilities, &partition),
        residual_moment,
        partition,
        probabilities,
    })
}

/// Seven-interval analysis of `S = sum_{i>=3} eps_i a_i`.
pub fn seven_interval_analysis(a: &WeightVector) -> Result<PartitionAnalysis> {
    if a.len() < 3 {
        return Err(Error::InvalidParameters("need at least three weights".into()));
    }
    let partition = build_seven_intervals(&a.weight(0), &a.weight(1))?;
    let analysis = analyse(a, partition, &[0, 1])?;
    debug_assert_eq!(analysis.residual_moment, suffix_second_moment(a, 2));
    Ok(analysis)
}

/// Five-interval analysis of the sum without `a_1` and `a_j` (`j` is
/// zero-based and at least 1).
pub fn five_interval_analysis(a: &WeightVector, j: usize) -> Result<PartitionAnalysis> {
    if j == 0 || j >= a.len() {
        return Err(Error::InvalidParameters(format!("term index {j} out of range")));
    }
    let partition = build_five_intervals(&a.weight(0), &a.weight(j))?;
    analyse(a, partition, &[0, j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rademacher::{prob_abs_within, SumDistribution};
    use crate::rational::dec;

    fn ends(part: &IntervalPartition) -> Vec<Option<Rational>> {
        part.intervals.iter().map(|iv| iv.upper.clone()).collect()
    }

    #[test]
    fn seven_at_one_third() {
        let third = ratio(1, 3);
        let part = build_seven_intervals(&third, &third).unwrap();
        assert_eq!(
            ends(&part),
            vec![
                Some(ratio(1, 3)),
                Some(int(1)),
                Some(int(1)),
                Some(ratio(5, 3)),
                Some(ratio(7, 3)),
                Some(ratio(7, 3)),
                None
            ]
        );
        assert!(part.intervals[0].lower_closed && part.intervals[0].upper_closed);
        assert!(part.intervals[2].is_empty());
        assert!(part.intervals[5].is_empty());
        assert!(!part.intervals[1].is_empty());
        assert_eq!(part.exceedance_weights, quarters(&[0, 1, 2, 3, 4, 4, 4]));
    }

    #[test]
    fn seven_at_049_025() {
        let part = build_seven_intervals(&dec("0.49"), &dec("0.25")).unwrap();
        let want: Vec<_> = ["0.26", "0.76", "1.24", "1.74", "1.78", "3.22"]
            .iter()
            .map(|s| Some(dec(s)))
            .chain([None])
            .collect();
        assert_eq!(ends(&part), want);
    }

    #[test]
    fn seven_rejects_bad_order() {
        assert!(matches!(
            build_seven_intervals(&dec("0.3"), &dec("0.4")),
            Err(Error::InvalidParameters(_))
        ));
        assert!(build_seven_intervals(&dec("0.3"), &dec("0")).is_err());
        // endpoints cross once a1 > 1/2
        assert!(build_seven_intervals(&dec("0.6"), &dec("0.3")).is_err());
    }

    #[test]
    fn five_examples() {
        let part = build_five_intervals(&dec("0.6"), &dec("0.3")).unwrap();
        let want: Vec<_> = ["0.1", "0.7", "1.3", "1.9"]
            .iter()
            .map(|s| Some(dec(s)))
            .chain([None])
            .collect();
        assert_eq!(ends(&part), want);

        let half = ratio(1, 2);
        let part = build_five_intervals(&half, &half).unwrap();
        assert_eq!(
            ends(&part),
            vec![Some(int(0)), Some(int(1)), Some(int(1)), Some(int(2)), None]
        );
        assert!(!part.intervals[0].is_empty());
        assert!(part.intervals[2].is_empty());
        assert!(build_five_intervals(&dec("0.49"), &dec("0.5")).is_err());
    }

    #[test]
    fn ninths_probabilities() {
        let a = WeightVector::new(&vec![ratio(1, 3); 9]).unwrap();
        let an = seven_interval_analysis(&a).unwrap();
        let want: Vec<_> = [70, 42, 0, 14, 2, 0, 0].iter().map(|c| ratio(*c, 128)).collect();
        assert_eq!(an.probabilities.p, want);
        assert_eq!(an.probabilities.total(), int(1));
        assert_eq!(an.exceedance, ratio(23, 128));
        assert_eq!(
            int(1) - prob_abs_within(&a, &int(1), false).unwrap(),
            ratio(23, 128)
        );
        let lhs = ratio(1, 9) * ratio(42, 128) + ratio(14, 128) + ratio(25, 9) * ratio(2, 128);
        assert_eq!(an.moment_lhs, lhs);
        assert!(an.moment_lhs <= ratio(7, 9));
        assert_eq!(an.residual_moment, ratio(7, 9));
    }

    #[test]
    fn degenerate_tails() {
        let third = ratio(1, 3);
        let part = build_seven_intervals(&third, &third).unwrap();
        let point = SumDistribution::of_terms(&[], 1, 24).unwrap();
        let p = interval_probabilities(&point, &part);
        assert_eq!(p.p[0], int(1));
        assert!(p.p[1..].iter().all(|x| x.is_zero()));
        assert!(exceedance_probability(&p, &part).is_zero());
        assert!(second_moment_lhs(&p, &part).is_zero());

        let pm = SumDistribution::of_terms(&[1], 1, 24).unwrap();
        let p = interval_probabilities(&pm, &part);
        assert_eq!(p.p[1], int(1));
        assert_eq!(p.total(), int(1));
    }

    #[test]
    fn scaled_membership_matches_rational() {
        let part = build_seven_intervals(&dec("0.37"), &dec("0.29")).unwrap();
        let denom = 300;
        for m in 0..1200i128 {
            let x = Rational::new(m.into(), denom.into());
            for iv in &part.intervals {
                assert_eq!(iv.contains(&x), iv.contains_scaled(m, denom));
            }
        }
    }
}
