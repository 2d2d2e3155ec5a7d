use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Shorthand for small literal fractions.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Renders `p/q`, or `p` when `q = 1`.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Strict inverse of [`format_rational`]: optional leading `-`, decimal digits,
/// optional `/` and a positive denominator. No whitespace, no `+`.
/// Unreduced input such as `2/4` is accepted and reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err(err());
    }
    let mut numer: BigInt = num.parse().map_err(|_| err())?;
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    if neg {
        numer = -numer;
    }
    let g = numer.gcd(&denom);
    let (n, d) = (numer / &g, denom / &g);
    debug_assert!(d.is_positive());
    Ok(Rational::new_raw(n, d))
}
