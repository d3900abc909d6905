//! Exact rational helpers shared by every module: parsing, fixed-digit
//! decimal rendering, grid rounding and scaled floors.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"3/5"`, `"0.6"`, `"-1.25"` or `"7"` into an exact rational.
/// Decimals are read digit by digit, never through a float.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let fail = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(|| fail("bad numerator"))?;
        let den = parse_decimal(den.trim()).ok_or_else(|| fail("bad denominator"))?;
        if den.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(num / den);
    }
    parse_decimal(s).ok_or_else(|| fail("not a decimal or fraction"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Parses a literal that is known to be well formed; used for constants.
pub fn dec(text: &str) -> Rational {
    parse_rational(text).unwrap_or_else(|e| panic!("bad rational literal {text:?}: {e}"))
}

/// `numerator/denominator`, always with an explicit denominator.
pub fn fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Rounds half away from zero to `digits` fractional digits and trims
/// trailing zeros.
pub fn decimal_string(value: &Rational, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10), digits);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let rounded = round_half_away(&scaled);
    let (whole, frac) = rounded.div_rem(&scale);
    let mut out = String::new();
    if value.is_negative() && !rounded.is_zero() {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        let frac = format!("{:0>width$}", frac.to_string(), width = digits);
        let frac = frac.trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    }
    out
}

/// Round a non-negative or negative rational to the nearest integer, ties
/// away from zero.
pub fn round_half_away(value: &Rational) -> BigInt {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if value.is_negative() {
        -(-value + half).floor().to_integer()
    } else {
        (value + half).floor().to_integer()
    }
}

/// Nearest multiple of `step`, ties away from zero.
pub fn round_to_step(value: &Rational, step: &Rational) -> Rational {
    Rational::from_integer(round_half_away(&(value / step))) * step
}

pub fn is_multiple_of(value: &Rational, step: &Rational) -> bool {
    (value / step).is_integer()
}

/// `floor(value * denom)` as an `i128`. Callers guarantee the magnitude fits.
pub fn floor_scaled(value: &Rational, denom: i128) -> i128 {
    let scaled = value * Rational::from_integer(BigInt::from(denom));
    scaled
        .floor()
        .to_integer()
        .to_i128()
        .expect("scaled threshold out of i128 range")
}

/// `ceil(value * denom)` as an `i128`.
pub fn ceil_scaled(value: &Rational, denom: i128) -> i128 {
    let scaled = value * Rational::from_integer(BigInt::from(denom));
    scaled
        .ceil()
        .to_integer()
        .to_i128()
        .expect("scaled threshold out of i128 range")
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// The exact binary value of a finite float.
pub fn from_f64(value: f64) -> Rational {
    Rational::from_float(value).expect("finite float")
}

/// Largest multiple of `10^-digits` not exceeding `value`.
pub fn floor_to_digits(value: &Rational, digits: usize) -> Rational {
    let scale = Rational::from_integer(num::pow(BigInt::from(10), digits));
    (value * &scale).floor() / scale
}

/// Smallest multiple of `10^-digits` at or above `value`.
pub fn ceil_to_digits(value: &Rational, digits: usize) -> Rational {
    let scale = Rational::from_integer(num::pow(BigInt::from(10), digits));
    (value * &scale).ceil() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/5").unwrap(), ratio(3, 5));
        assert_eq!(parse_rational("0.6").unwrap(), ratio(3, 5));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0.5/2").unwrap(), ratio(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1e-3").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&ratio(7, 8), 12), "0.875");
        assert_eq!(decimal_string(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(decimal_string(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(decimal_string(&int(1), 12), "1");
        assert_eq!(decimal_string(&int(0), 12), "0");
        assert_eq!(decimal_string(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(fraction_string(&int(1)), "1/1");
    }

    #[test]
    fn rounding_ties_go_away_from_zero() {
        let step = ratio(1, 100);
        assert_eq!(round_to_step(&dec("0.255"), &step), dec("0.26"));
        assert_eq!(round_to_step(&dec("0.254"), &step), dec("0.25"));
        assert_eq!(round_to_step(&dec("0.333"), &step), dec("0.33"));
        assert_eq!(round_to_step(&dec("-0.255"), &step), dec("-0.26"));
    }

    #[test]
    fn scaled_floor_and_ceil() {
        assert_eq!(floor_scaled(&dec("0.335"), 1000), 335);
        assert_eq!(floor_scaled(&dec("0.335"), 100), 33);
        assert_eq!(ceil_scaled(&dec("0.335"), 100), 34);
        assert_eq!(floor_scaled(&ratio(-1, 3), 1), -1);
    }
}
