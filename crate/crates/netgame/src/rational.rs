//! Exact rational arithmetic for game parameters and utilities.
//!
//! All costs and time fractions are kept as exact rationals so that floor
//! thresholds like `⌊0.3/0.1⌋` never fall victim to floating-point rounding
//! and sweep outputs are reproducible bit for bit. Values enter either as
//! `p/q` fraction strings or as decimal strings, both of which convert
//! exactly. Conversion from `f64` goes through a continued-fraction
//! approximation with an explicit tolerance.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::ParseError;

/// Exact rational scalar. i128 components leave ample headroom for the
/// products of costs, link counts and common denominators that show up in
/// utility computations.
pub type Frac = Ratio<i128>;

/// Tolerance used when a value arrives as `f64` instead of as exact text,
/// and when classifying a grid point as sitting on a condition boundary.
pub const EPS: f64 = 1e-9;

/// Builds a fraction from a numerator/denominator pair.
pub fn frac(num: i128, den: i128) -> Frac {
    Frac::new(num, den)
}

/// Parses `p/q` fraction syntax or decimal syntax (`0.125`, `3`, `-1.5`).
/// Both forms convert exactly; no rounding is involved.
pub fn parse_frac(text: &str) -> Result<Frac, ParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseError::EmptyNumber);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: i128 = num
            .trim()
            .parse()
            .map_err(|_| ParseError::BadNumber(s.to_string()))?;
        let d: i128 = den
            .trim()
            .parse()
            .map_err(|_| ParseError::BadNumber(s.to_string()))?;
        if d == 0 {
            return Err(ParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Frac::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Frac, ParseError> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseError::BadNumber(s.to_string()));
    }
    if frac_part.len() > 27 {
        return Err(ParseError::TooPrecise(s.to_string()));
    }
    let mut num: i128 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        let d = c.to_digit(10).ok_or_else(|| ParseError::BadNumber(s.to_string()))? as i128;
        num = num
            .checked_mul(10)
            .and_then(|v| v.checked_add(d))
            .ok_or_else(|| ParseError::TooPrecise(s.to_string()))?;
    }
    let den = 10i128.pow(frac_part.len() as u32);
    Ok(Frac::new(sign * num, den))
}

/// Approximates an `f64` by a rational within [`EPS`] using continued
/// fractions. Exact text input should be preferred; this exists so
/// programmatic callers with floats are not silently truncated.
pub fn frac_from_f64(x: f64) -> Result<Frac, ParseError> {
    if !x.is_finite() {
        return Err(ParseError::NotFinite(x));
    }
    // Continued-fraction convergents until the approximation is within EPS.
    let sign = if x < 0.0 { -1i128 } else { 1i128 };
    let mut v = x.abs();
    let (mut h0, mut h1) = (1i128, v.floor() as i128);
    let (mut k0, mut k1) = (0i128, 1i128);
    for _ in 0..64 {
        let approx = h1 as f64 / k1 as f64;
        if (approx - v.abs().max(v)).abs() <= EPS || (approx - x.abs()).abs() <= EPS {
            break;
        }
        let frac_part = v - v.floor();
        if frac_part.abs() < f64::EPSILON {
            break;
        }
        v = 1.0 / frac_part;
        let a = v.floor() as i128;
        let h2 = a.checked_mul(h1).and_then(|p| p.checked_add(h0));
        let k2 = a.checked_mul(k1).and_then(|p| p.checked_add(k0));
        match (h2, k2) {
            (Some(h2), Some(k2)) => {
                h0 = h1;
                h1 = h2;
                k0 = k1;
                k1 = k2;
            }
            _ => break,
        }
    }
    Ok(Frac::new(sign * h1, k1))
}

/// `⌊x⌋` as i64, clamped below at 0. The thresholds in the game model are
/// all nonnegative counts.
pub fn floor_nonneg(x: Frac) -> i64 {
    if x.is_negative() {
        return 0;
    }
    x.floor().to_integer().to_i64().unwrap_or(i64::MAX)
}

/// True when `x` is an integer (the floor argument sits exactly on a jump).
pub fn is_integer(x: Frac) -> bool {
    x.fract().is_zero()
}

/// Distance from `x` to the nearest integer, as a fraction.
pub fn dist_to_integer(x: Frac) -> Frac {
    let f = x.fract().abs();
    let one_minus = Frac::from_integer(1) - f;
    if f < one_minus {
        f
    } else {
        one_minus
    }
}

pub fn to_f64(x: Frac) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Renders `x` canonically: integers bare, everything else as `p/q`.
pub fn format_frac(x: Frac) -> String {
    if x.is_integer() {
        format!("{}", x.to_integer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Wrapper giving `Frac` the canonical display used in CSV comment lines
/// and key=value files.
pub struct DisplayFrac(pub Frac);

impl fmt::Display for DisplayFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_frac(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_frac("1/20").unwrap(), frac(1, 20));
        assert_eq!(parse_frac("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse_frac("0.3").unwrap(), frac(3, 10));
        assert_eq!(parse_frac("3").unwrap(), Frac::from_integer(3));
        assert_eq!(parse_frac("-1.5").unwrap(), frac(-3, 2));
        assert_eq!(parse_frac(" 7 / 25 ").unwrap(), frac(7, 25));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_frac("").is_err());
        assert!(parse_frac("1/0").is_err());
        assert!(parse_frac("abc").is_err());
        assert!(parse_frac(".").is_err());
    }

    #[test]
    fn floor_behaves_exactly_on_rationals() {
        // The classic float trap: 0.3/0.1 must floor to 3, not 2.
        let x = frac(3, 10) / frac(1, 10);
        assert_eq!(floor_nonneg(x), 3);
        assert_eq!(floor_nonneg(frac(2, 10) / frac(1, 8)), 1);
        assert_eq!(floor_nonneg(frac(-1, 2)), 0);
    }

    #[test]
    fn f64_round_trip() {
        let x = frac_from_f64(0.125).unwrap();
        assert_eq!(x, frac(1, 8));
        let y = frac_from_f64(0.515).unwrap();
        assert!((to_f64(y) - 0.515).abs() <= EPS);
    }

    #[test]
    fn integer_distance() {
        assert!(is_integer(frac(8, 4)));
        assert!(!is_integer(frac(9, 4)));
        assert_eq!(dist_to_integer(frac(9, 4)), frac(1, 4));
        assert_eq!(dist_to_integer(frac(15, 4)), frac(1, 4));
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_frac(frac(2, 4)), "1/2");
        assert_eq!(format_frac(frac(8, 4)), "2");
    }
}
