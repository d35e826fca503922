//! Arbitrary-precision rationals.
//!
//! The canonical text form is always `num/den` with the fraction reduced and
//! `den >= 1`; [`parse_canonical`] accepts nothing else. [`parse_exact`] is
//! the looser reader used for command-line input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Writes `num/den`, including `/1` for integers.
pub fn format_canonical(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Reads a reduced `num/den` with `den >= 1`.
pub fn parse_canonical(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = s.split_once('/').ok_or_else(bad)?;
    let num = parse_int(num).ok_or_else(bad)?;
    let den = parse_int(den).ok_or_else(bad)?;
    if !den.is_positive() || !num.gcd(&den).is_one() {
        return Err(bad());
    }
    Ok(Rational::new_raw(num, den))
}

/// Reads `p` or `p/q` (any sign placement, any common factor), also
/// accepting the Unicode minus sign. Decimals are rejected.
pub fn parse_exact(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let cleaned = s.trim().replace('\u{2212}', "-");
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num = parse_int(num.strip_prefix('+').unwrap_or(num)).ok_or_else(bad)?;
    let den = parse_int(den.strip_prefix('+').unwrap_or(den)).ok_or_else(bad)?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        for x in [ratio(3, 6), int(0), int(-7), ratio(-5, 2)] {
            let s = format_canonical(&x);
            assert_eq!(parse_canonical(&s).unwrap(), x);
        }
        assert_eq!(format_canonical(&int(0)), "0/1");
        assert_eq!(format_canonical(&ratio(-2, 4)), "-1/2");
    }

    #[test]
    fn canonical_rejects_noncanonical() {
        for s in ["3/6", "1", "1/-2", "0/2", "1/0", "+1/2", "1.5/1", " 1/2", "--1/2"] {
            assert!(parse_canonical(s).is_err(), "{s}");
        }
    }

    #[test]
    fn exact_reader() {
        assert_eq!(parse_exact("\u{2212}1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_exact("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_exact("3").unwrap(), int(3));
        assert!(parse_exact("0.5").is_err());
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("").is_err());
    }
}
