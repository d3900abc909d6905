//! Serialization helpers: every exact number is emitted as a fraction next
//! to a 12-digit decimal.

use serde::{Serialize, Serializer};

use crate::rational::{decimal_string, fraction_string, Rational};

pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Num {
    pub fraction: String,
    pub decimal: String,
}

impl Num {
    pub fn of(value: &Rational) -> Self {
        Self {
            fraction: fraction_string(value),
            decimal: decimal_string(value, DECIMAL_DIGITS),
        }
    }
}

impl From<&Rational> for Num {
    fn from(value: &Rational) -> Self {
        Num::of(value)
    }
}

pub fn ser_rational<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Num::of(value).serialize(s)
}

pub fn ser_rationals<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(Num::of))
}
