use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let trimmed = text.trim();
    let bad = || ExactError::ParseRational(text.to_string());
    if trimmed.is_empty() {
        return Err(bad());
    }
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => BigInt::from_str(trimmed)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn sign_power(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn pow(base: &Rational, exponent: u32) -> Rational {
    (0..exponent).fold(Rational::one(), |acc, _| acc * base)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn normalization_is_automatic() {
        let x = rat(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }
}
