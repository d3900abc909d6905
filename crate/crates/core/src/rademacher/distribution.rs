use num::{BigInt, One, Zero};

use super::weights::WeightVector;
use crate::error::{Error, Result};
use crate::rational::{ceil_scaled, floor_scaled, Rational};

/// Largest `n` for which the full law is materialized.
pub const FULL_ENUMERATION_LIMIT: usize = 24;
/// Largest `n` for threshold queries answered by meet-in-the-middle.
pub const SPLIT_ENUMERATION_LIMIT: usize = 40;

/// Exact law of a Rademacher sum `sum eps_i w_i`.
///
/// Values are kept as integers over a common denominator and probabilities
/// as counts out of `2^terms`; [`SumDistribution::atoms`] exposes both as
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumDistribution {
    denom: i128,
    terms: u32,
    atoms: Vec<(i128, u64)>,
}

impl SumDistribution {
    /// Law of `sum eps_i terms[i] / denom`. `terms` may be empty, giving the
    /// point mass at zero.
    pub fn of_terms(terms: &[i128], denom: i128, limit: usize) -> Result<Self> {
        if terms.len() > limit {
            return Err(Error::DimensionTooLarge {
                n: terms.len(),
                limit,
            });
        }
        Ok(Self {
            denom,
            terms: terms.len() as u32,
            atoms: signed_sum_law(terms),
        })
    }

    pub fn denom(&self) -> i128 {
        self.denom
    }

    /// Number of signed terms; probabilities are counts over `2^terms()`.
    pub fn terms(&self) -> u32 {
        self.terms
    }

    pub fn total(&self) -> u64 {
        1u64 << self.terms
    }

    /// `(value * denom, count)` pairs, values strictly increasing.
    pub fn scaled_atoms(&self) -> &[(i128, u64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn probability_of_count(&self, count: u64) -> Rational {
        Rational::new(BigInt::from(count), BigInt::from(self.total()))
    }

    /// `(value, probability)` pairs in increasing order of value.
    pub fn atoms(&self) -> Vec<(Rational, Rational)> {
        self.atoms
            .iter()
            .map(|(v, c)| {
                (
                    Rational::new(BigInt::from(*v), BigInt::from(self.denom)),
                    self.probability_of_count(*c),
                )
            })
            .collect()
    }

    /// Probability that `|S| <= bound / denom` for an integer `bound`.
    pub fn mass_abs_at_most_scaled(&self, bound: i128) -> u64 {
        self.atoms
            .iter()
            .filter(|(v, _)| v.abs() <= bound)
            .map(|(_, c)| c)
            .sum()
    }

    /// `E[S^2]` computed from the atoms.
    pub fn second_moment(&self) -> Rational {
        let numer: BigInt = self
            .atoms
            .iter()
            .map(|(v, c)| BigInt::from(*v) * BigInt::from(*v) * BigInt::from(*c))
            .sum();
        let denom = BigInt::from(self.denom) * BigInt::from(self.denom) * BigInt::from(self.total());
        Rational::new(numer, denom)
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.atoms.len();
        (0..k).all(|i| {
            let (v, c) = self.atoms[i];
            let (w, d) = self.atoms[k - 1 - i];
            v == -w && c == d
        })
    }
}

/// Sorted, de-duplicated law of `sum eps_i terms[i]` built by repeatedly
/// merging the shifted copies `law - w` and `law + w`.
pub(crate) fn signed_sum_law(terms: &[i128]) -> Vec<(i128, u64)> {
    let mut law = vec![(0i128, 1u64)];
    for &w in terms {
        let mut merged = Vec::with_capacity(law.len() * 2);
        let (mut i, mut j) = (0, 0);
        while i < law.len() || j < law.len() {
            let minus = law.get(i).map(|(v, c)| (v - w, *c));
            let plus = law.get(j).map(|(v, c)| (v + w, *c));
            let next = match (minus, plus) {
                (Some(m), Some(p)) if m.0 <= p.0 => {
                    i += 1;
                    m
                }
                (Some(_), Some(p)) => {
                    j += 1;
                    p
                }
                (Some(m), None) => {
                    i += 1;
                    m
                }
                (None, Some(p)) => {
                    j += 1;
                    p
                }
                (None, None) => unreachable!(),
            };
            match merged.last_mut() {
                Some((v, c)) if *v == next.0 => *c += next.1,
                _ => merged.push(next),
            }
        }
        law = merged;
    }
    law
}

/// Number of pairs `(l, r)` weighted by multiplicity with `l + r <= bound`.
fn count_pairs_at_most(left: &[(i128, u64)], right: &[(i128, u64)], bound: i128) -> u64 {
    let mut prefix = Vec::with_capacity(right.len() + 1);
    prefix.push(0u64);
    for (_, c) in right {
        prefix.push(prefix.last().unwrap() + c);
    }
    let mut j = right.len();
    let mut total = 0u64;
    for (l, c) in left {
        while j > 0 && right[j - 1].0 > bound - l {
            j -= 1;
        }
        total += c * prefix[j];
    }
    total
}

/// Exact law of `sum eps_i a_i` for `n <= 24`.
pub fn exact_distribution(a: &WeightVector) -> Result<SumDistribution> {
    SumDistribution::of_terms(a.numerators(), a.denom(), FULL_ENUMERATION_LIMIT)
}

/// Law of the sum over every index not in `excluded` (zero-based).
pub fn residual_distribution(a: &WeightVector, excluded: &[usize]) -> Result<SumDistribution> {
    let terms: Vec<i128> = a
        .numerators()
        .iter()
        .enumerate()
        .filter(|(i, _)| !excluded.contains(i))
        .map(|(_, m)| *m)
        .collect();
    SumDistribution::of_terms(&terms, a.denom(), FULL_ENUMERATION_LIMIT)
}

/// Exact `P(|S| <= t)`, or `P(|S| < t)` when `strict`, counted by
/// meet-in-the-middle: the two half-laws are enumerated separately and
/// pairs are counted with a sliding pointer, so nothing of size `2^n` is
/// ever built.
pub fn prob_abs_within(a: &WeightVector, t: &Rational, strict: bool) -> Result<Rational> {
    let count = count_abs_within(a, t, strict)?;
    Ok(Rational::new(
        BigInt::from(count),
        BigInt::one() << a.len(),
    ))
}

/// Numerator of [`prob_abs_within`] over `2^n`.
pub fn count_abs_within(a: &WeightVector, t: &Rational, strict: bool) -> Result<u64> {
    if t < &Rational::zero() {
        return Err(Error::InvalidParameters(format!("threshold {t} is negative")));
    }
    if a.len() > SPLIT_ENUMERATION_LIMIT {
        return Err(Error::DimensionTooLarge {
            n: a.len(),
            limit: SPLIT_ENUMERATION_LIMIT,
        });
    }
    let bound = if strict {
        ceil_scaled(t, a.denom()) - 1
    } else {
        floor_scaled(t, a.denom())
    };
    if bound < 0 {
        return Ok(0);
    }
    let (lo, hi) = a.numerators().split_at(a.len() / 2);
    let left = signed_sum_law(lo);
    let right = signed_sum_law(hi);
    Ok(count_pairs_at_most(&left, &right, bound) - count_pairs_at_most(&left, &right, -bound - 1))
}

/// `E[S^2] = sum a_i^2`; exactly one for a unit vector.
pub fn second_moment(a: &WeightVector) -> Rational {
    suffix_second_moment(a, 0)
}

/// `sum_{i >= from} a_i^2` with a zero-based `from`.
pub fn suffix_second_moment(a: &WeightVector, from: usize) -> Rational {
    a.weights().iter().skip(from).map(|w| w * w).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn quarter() -> WeightVector {
        WeightVector::new(&vec![ratio(1, 2); 4]).unwrap()
    }

    fn ninths() -> WeightVector {
        WeightVector::new(&vec![ratio(1, 3); 9]).unwrap()
    }

    #[test]
    fn single_sign() {
        let a = WeightVector::new(&[int(1)]).unwrap();
        let d = exact_distribution(&a).unwrap();
        assert_eq!(d.atoms(), vec![(int(-1), ratio(1, 2)), (int(1), ratio(1, 2))]);
    }

    #[test]
    fn three_four_five() {
        let a = WeightVector::new(&[ratio(3, 5), ratio(4, 5)]).unwrap();
        let d = exact_distribution(&a).unwrap();
        let expected: Vec<_> = [(-7, 5), (-1, 5), (1, 5), (7, 5)]
            .iter()
            .map(|&(n, m)| (ratio(n, m), ratio(1, 4)))
            .collect();
        assert_eq!(d.atoms(), expected);
    }

    #[test]
    fn quarter_law_matches_enumeration() {
        // Oracle: walk all 16 sign patterns directly.
        let mut counts = std::collections::BTreeMap::new();
        for mask in 0u32..16 {
            let s: i32 = (0..4).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).sum();
            *counts.entry(s).or_insert(0u64) += 1;
        }
        let d = exact_distribution(&quarter()).unwrap();
        // numerators are all 1 over denominator 2, so scaled values are the
        // plain +-1 sums
        let got: Vec<(i128, u64)> = d.scaled_atoms().to_vec();
        let want: Vec<(i128, u64)> = counts.into_iter().map(|(s, c)| (s as i128, c)).collect();
        assert_eq!(got, want);
        assert_eq!(
            d.atoms().into_iter().map(|(_, p)| p).collect::<Vec<_>>(),
            vec![ratio(1, 16), ratio(4, 16), ratio(6, 16), ratio(4, 16), ratio(1, 16)]
        );
        assert!(d.is_symmetric());
    }

    #[test]
    fn threshold_queries() {
        assert_eq!(prob_abs_within(&quarter(), &int(1), false).unwrap(), ratio(7, 8));
        assert_eq!(prob_abs_within(&quarter(), &int(1), true).unwrap(), ratio(3, 8));
        assert_eq!(prob_abs_within(&ninths(), &int(1), false).unwrap(), ratio(105, 128));
        assert_eq!(prob_abs_within(&ninths(), &int(1), true).unwrap(), ratio(63, 128));
        let pyth = WeightVector::new(&[ratio(3, 5), ratio(4, 5)]).unwrap();
        assert_eq!(prob_abs_within(&pyth, &int(0), false).unwrap(), int(0));
        assert_eq!(prob_abs_within(&pyth, &int(0), true).unwrap(), int(0));
        assert!(prob_abs_within(&pyth, &int(-1), false).is_err());
    }

    #[test]
    fn binomial_count_for_ninths() {
        // |2k - 9| <= 3  <=>  k in 3..=6
        let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        let count: u64 = (3..=6).map(|k| binom(9, k)).sum();
        assert_eq!(Rational::new(count.into(), 512.into()), ratio(105, 128));
    }

    #[test]
    fn dimension_limits() {
        let a = WeightVector::new(&vec![ratio(1, 5); 25]).unwrap();
        assert!(matches!(
            exact_distribution(&a),
            Err(Error::DimensionTooLarge { n: 25, .. })
        ));
        assert!(prob_abs_within(&a, &int(1), false).is_ok());
        let b = WeightVector::new(&vec![ratio(1, 7); 49]).unwrap();
        assert!(prob_abs_within(&b, &int(1), false).is_err());
    }

    #[test]
    fn second_moments() {
        assert_eq!(second_moment(&quarter()), int(1));
        assert_eq!(suffix_second_moment(&ninths(), 2), ratio(7, 9));
        let pyth = WeightVector::new(&[ratio(3, 5), ratio(4, 5)]).unwrap();
        assert_eq!(suffix_second_moment(&pyth, 1), ratio(9, 25));
        assert_eq!(exact_distribution(&ninths()).unwrap().second_moment(), int(1));
    }

    #[test]
    fn residual_of_ninths() {
        let d = residual_distribution(&ninths(), &[0, 1]).unwrap();
        assert_eq!(d.terms(), 7);
        assert_eq!(d.second_moment(), ratio(7, 9));
    }
}
