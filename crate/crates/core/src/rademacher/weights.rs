use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{decimal_string, Rational};

/// Largest common denominator accepted; keeps every signed sum of up to 64
/// terms, and its product with any threshold denominator, inside `i128`.
pub const MAX_DENOMINATOR: i128 = 1 << 60;

/// Grid used when projecting float input onto the rational unit sphere.
pub const INGEST_PRECISION: i64 = 100_000_000;

const FLOAT_NORM_TOLERANCE: f64 = 1e-12;

/// Sorted positive weights `a_1 >= ... >= a_n > 0` with `sum a_i^2 = 1`
/// exactly, stored as integer numerators over a shared denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    numerators: Vec<i128>,
    denom: i128,
    ingested: bool,
}

impl WeightVector {
    /// Certificate mode: the squares must sum to exactly one.
    pub fn new(raw: &[Rational]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(neg) = raw.iter().find(|w| w.is_negative()) {
            return Err(Error::NegativeEntry(neg.to_string()));
        }
        let mut weights: Vec<Rational> = raw.iter().filter(|w| !w.is_zero()).cloned().collect();
        if weights.is_empty() {
            return Err(Error::EmptyVector);
        }
        let norm: Rational = weights.iter().map(|w| w * w).sum();
        if !norm.is_one() {
            return Err(Error::NotUnitNorm(format!(
                "{} (~{})",
                norm,
                decimal_string(&norm, 12)
            )));
        }
        weights.sort_by(|a, b| b.cmp(a));
        let denom = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let denom = denom
            .to_i128()
            .filter(|d| *d <= MAX_DENOMINATOR)
            .ok_or(Error::DenominatorTooLarge)?;
        let numerators = weights
            .iter()
            .map(|w| {
                (w * Rational::from_integer(BigInt::from(denom)))
                    .to_integer()
                    .to_i128()
                    .expect("numerator bounded by denominator")
            })
            .collect();
        Ok(Self {
            numerators,
            denom,
            ingested: false,
        })
    }

    /// Float-ingest mode: the input must be a unit vector to within 1e-12;
    /// it is then projected onto a nearby exact rational unit vector and
    /// the result is flagged as ingested.
    pub fn from_floats(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(bad) = raw.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::NegativeEntry(bad.to_string()));
        }
        if raw.iter().all(|w| *w == 0.0) {
            return Err(Error::EmptyVector);
        }
        let norm: f64 = raw.iter().map(|w| w * w).sum();
        if (norm - 1.0).abs() > FLOAT_NORM_TOLERANCE {
            return Err(Error::NotUnitNorm(format!("{norm} (float ingest)")));
        }
        let (numerators, denom) = rationalize_on_sphere(raw, INGEST_PRECISION);
        let mut vector = Self::from_scaled(numerators, denom)?;
        vector.ingested = true;
        Ok(vector)
    }

    /// Builds from integer numerators over `denom`; zeros are dropped, signs
    /// are rejected, and `sum numerators^2 == denom^2` is required.
    pub fn from_scaled(mut numerators: Vec<i128>, denom: i128) -> Result<Self> {
        if denom <= 0 || denom > MAX_DENOMINATOR {
            return Err(Error::DenominatorTooLarge);
        }
        if let Some(neg) = numerators.iter().find(|m| **m < 0) {
            return Err(Error::NegativeEntry(format!("{neg}/{denom}")));
        }
        numerators.retain(|m| *m != 0);
        if numerators.is_empty() {
            return Err(Error::EmptyVector);
        }
        let norm: BigInt = numerators.iter().map(|m| BigInt::from(*m) * BigInt::from(*m)).sum();
        if norm != BigInt::from(denom) * BigInt::from(denom) {
            return Err(Error::NotUnitNorm(format!("{norm}/{}", BigInt::from(denom).pow(2))));
        }
        let g = numerators.iter().fold(denom, |g, m| g.gcd(m));
        numerators.iter_mut().for_each(|m| *m /= g);
        numerators.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            numerators,
            denom: denom / g,
            ingested: false,
        })
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// Zero-based access: `weight(0)` is `a_1`.
    pub fn weight(&self, index: usize) -> Rational {
        Rational::new(self.numerators[index].into(), self.denom.into())
    }

    pub fn weights(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.weight(i)).collect()
    }

    pub fn numerators(&self) -> &[i128] {
        &self.numerators
    }

    pub fn denom(&self) -> i128 {
        self.denom
    }

    pub fn is_ingested(&self) -> bool {
        self.ingested
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|m| *m as f64 / self.denom as f64)
            .collect()
    }
}

/// Same as [`WeightVector::new`].
pub fn make_weight_vector(raw: &[Rational]) -> Result<WeightVector> {
    WeightVector::new(raw)
}

/// Projects a non-negative direction onto an exact rational point of the
/// unit sphere through the inverse stereographic map, with the pole on the
/// largest coordinate. `precision` is the grid denominator of the
/// stereographic coordinates, so the result is within ~1/precision of the
/// normalized direction. Returns `(numerators, denominator)` with
/// `sum numerators^2 == denominator^2`.
pub fn rationalize_on_sphere(direction: &[f64], precision: i64) -> (Vec<i128>, i128) {
    let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    let unit: Vec<f64> = direction.iter().map(|x| x.abs() / norm).collect();
    let pole = unit
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let q = precision as i128;
    let lifted: Vec<i128> = unit
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if i == pole {
                0
            } else {
                (x / (1.0 + unit[pole]) * precision as f64).round() as i128
            }
        })
        .collect();
    let lifted_sq: i128 = lifted.iter().map(|u| u * u).sum();
    let denom = q * q + lifted_sq;
    let numerators: Vec<i128> = lifted
        .iter()
        .enumerate()
        .map(|(i, u)| if i == pole { q * q - lifted_sq } else { 2 * q * u })
        .collect();
    let g = numerators.iter().fold(denom, |g, m| g.gcd(m));
    (numerators.into_iter().map(|m| m / g).collect(), denom / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{dec, ratio};

    #[test]
    fn quarter_vector_is_valid() {
        let a = WeightVector::new(&vec![ratio(1, 2); 4]).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.denom(), 2);
        assert_eq!(a.numerators(), &[1, 1, 1, 1]);
    }

    #[test]
    fn sorts_descending() {
        let a = WeightVector::new(&[dec("0.6"), dec("0.8")]).unwrap();
        assert_eq!(a.weights(), vec![ratio(4, 5), ratio(3, 5)]);
    }

    #[test]
    fn rejects_non_unit() {
        let err = WeightVector::new(&vec![ratio(1, 3); 8]).unwrap_err();
        assert!(matches!(err, Error::NotUnitNorm(_)));
    }

    #[test]
    fn strips_zeros_and_rejects_negatives() {
        let a = WeightVector::new(&[ratio(0, 1), ratio(3, 5), ratio(4, 5), ratio(0, 1)]).unwrap();
        assert_eq!(a.len(), 2);
        assert!(matches!(
            WeightVector::new(&[ratio(-3, 5), ratio(4, 5)]),
            Err(Error::NegativeEntry(_))
        ));
        assert_eq!(WeightVector::new(&[]), Err(Error::EmptyVector));
        assert_eq!(WeightVector::new(&[ratio(0, 1)]), Err(Error::EmptyVector));
    }

    #[test]
    fn float_ingest_projects_onto_sphere() {
        let a = WeightVector::from_floats(&[0.6, 0.8]).unwrap();
        assert!(a.is_ingested());
        let w = a.weights_f64();
        assert!((w[0] - 0.8).abs() < 1e-7 && (w[1] - 0.6).abs() < 1e-7);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let b = WeightVector::from_floats(&[h, h]).unwrap();
        let norm: Rational = b.weights().iter().map(|w| w * w).sum();
        assert_eq!(norm, ratio(1, 1));
        for w in b.weights_f64() {
            assert!((w - h).abs() < 1e-7);
        }
        assert!(WeightVector::from_floats(&[0.6, 0.7]).is_err());
    }

    #[test]
    fn stereographic_points_are_exact() {
        let (nums, d) = rationalize_on_sphere(&[0.3, 0.2, 0.9, 0.1, 0.25], 1000);
        let s: i128 = nums.iter().map(|m| m * m).sum();
        assert_eq!(s, d * d);
        assert!(WeightVector::from_scaled(nums, d).is_ok());
    }
}
