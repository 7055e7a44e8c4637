//! Exact rationals and their text form (`"3"`, `"-2/7"`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let digits = |x: &str| {
        let body = x.strip_prefix(['-', '+']).unwrap_or(x);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(n.into())
}

/// Small random rational with numerator in `[-99, 99]` and denominator in
/// `[1, 99]`.
pub fn random_small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let n: i64 = rng.random_range(-99..=99);
    let d: i64 = rng.random_range(1..=99);
    rational(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(parse_rational("4/6").unwrap(), rational(2, 3));
        assert_eq!(parse_rational("-3").unwrap(), integer(-3));
        assert_eq!(parse_rational("3/-6").unwrap(), rational(-1, 2));
        assert_eq!(format_rational(&rational(-2, 4)), "-1/2");
        assert_eq!(format_rational(&integer(7)), "7");
    }

    #[test]
    fn rejects_floats_and_zero_denominators() {
        for s in ["0.5", "1e3", "", "1/0", "a", "1/", "--1"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }
}
