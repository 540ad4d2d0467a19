//! Exact rational arithmetic helpers.
//!
//! `Rational` is `num_rational::BigRational`: always stored reduced, with a
//! positive denominator. Comparisons are exact; decimals exist only as a
//! rendering (`decimal_string`), never as a computation.

use crate::{Error, Natural, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Build a rational from two naturals. Reduction happens on construction.
pub fn ratio(num: &Natural, den: &Natural) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    Ok(Rational::new(
        BigInt::from(num.clone()),
        BigInt::from(den.clone()),
    ))
}

pub fn ratio_u64(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_natural(n: &Natural) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

pub fn two() -> Rational {
    Rational::from_integer(BigInt::from(2u32))
}

/// Parse "a/b" or a bare integer; underscores are allowed as separators.
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let clean: String = s.chars().filter(|&c| c != '_').collect();
    let parts: Vec<&str> = clean.split('/').collect();
    match parts.as_slice() {
        [n] => {
            let num: BigInt = n
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {n}")))?;
            Ok(Rational::from_integer(num))
        }
        [n, d] => {
            let num: BigInt = n
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {n}")))?;
            let den: BigInt = d
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {d}")))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(num, den))
        }
        _ => Err(Error::Parse(format!("not a fraction: {s}"))),
    }
}

/// Parse a natural number, allowing underscores.
pub fn parse_natural(s: &str) -> Result<Natural> {
    let clean: String = s.chars().filter(|&c| c != '_').collect();
    clean
        .parse::<BigUint>()
        .map_err(|_| Error::Parse(format!("not a natural number: {s}")))
}

/// Numerator and denominator as naturals. Errors on negative values.
pub fn to_naturals(r: &Rational) -> Result<(Natural, Natural)> {
    if r.is_negative() {
        return Err(Error::Domain("expected a nonnegative rational".into()));
    }
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();
    Ok((num, den))
}

/// Render `r` with exactly `digits` fractional digits, rounding half to even.
///
/// Equality tests elsewhere are always exact-rational; this is display only.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let num = r.numer().abs().to_biguint().unwrap();
    let den = r.denom().abs().to_biguint().unwrap();

    let scale = BigUint::from(10u32).pow(digits as u32);
    let scaled = &num * &scale;
    let mut q = &scaled / &den;
    let rem = &scaled % &den;

    // round half even on the remainder
    let twice = &rem * 2u32;
    if twice > den || (twice == den && (&q % 2u32) == BigUint::one()) {
        q += 1u32;
    }

    let digits_str = q.to_string();
    let mut int_part;
    let frac_part;
    if digits == 0 {
        int_part = digits_str;
        frac_part = String::new();
    } else if digits_str.len() <= digits {
        int_part = "0".to_string();
        frac_part = format!("{:0>width$}", digits_str, width = digits);
    } else {
        let split = digits_str.len() - digits;
        int_part = digits_str[..split].to_string();
        frac_part = digits_str[split..].to_string();
    }
    if neg && (int_part != "0" || frac_part.chars().any(|c| c != '0')) {
        int_part = format!("-{int_part}");
    }
    if digits == 0 {
        int_part
    } else {
        format!("{int_part}.{frac_part}")
    }
}

/// "a/b", or just "a" for integers.
pub fn fraction_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
