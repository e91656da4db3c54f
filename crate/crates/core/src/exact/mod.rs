//! Exact scalars, integer and rational matrices, and univariate polynomials.

mod interval;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod snf;

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use interval::OpenInterval;
pub use matrix::IntMatrix;
pub use poly::Polynomial;
pub use roots::{isolate_real_roots, refine_root, IsolatingInterval};
pub use snf::{smith_normal_form, Smith};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"`, `"-p/q"`; the Unicode minus sign is accepted too.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    if cleaned.is_empty() {
        return Err(err());
    }
    let (n, d) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| err())?;
    let d = BigInt::from_str(d).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Rounds `x` to `places` decimals (half away from zero) and formats it.
pub fn round_decimal(x: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = x.abs() * Rational::from_integer(scale);
    let rounded = (scaled + q(1, 2)).floor().to_integer();
    let digits = rounded.to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int_part, frac) = padded.split_at(padded.len() - places);
        format!("{int_part}.{frac}")
    };
    if x.is_negative() && body.chars().any(|c| c != '0' && c != '.') {
        format!("-{body}")
    } else {
        body
    }
}

pub fn dot_int_rational(a: &[i64], x: &[Rational]) -> Rational {
    a.iter()
        .zip(x)
        .filter(|(ai, _)| **ai != 0)
        .fold(Rational::zero(), |acc, (ai, xi)| acc + xi * BigInt::from(*ai))
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("599/15").unwrap(), q(599, 15));
        assert_eq!(parse_rational("\u{2212}13/9").unwrap(), q(-13, 9));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q(-26, 18)), "-13/9");
        assert_eq!(format_rational(&int(3)), "3");
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(round_decimal(&q(1, 3), 5), "0.33333");
        assert_eq!(round_decimal(&q(2, 3), 2), "0.67");
        assert_eq!(round_decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(round_decimal(&q(1, 100000), 2), "0.00");
        assert_eq!(round_decimal(&q(-1, 100000), 2), "0.00");
        assert_eq!(round_decimal(&int(12), 0), "12");
    }
}
