//! Genus-zero base values `GW_{k,0}(tau_{k-1}(F*) F*)` and
//! `GW_{(1^k),(1^k),0}(tau_{k-1}(F*) F*)`, computed by recurrence from degree one.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{factorial, Rational};

fn alternating(k: u32) -> Rational {
    if k % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `B(1) = 1`, `B(k) = -B(k-1) / k`; equals `(-1)^{k-1} / k!`.
pub fn base_absolute(k: u32) -> Rational {
    assert!(k >= 1, "base values start at degree 1");
    let mut b = Rational::one();
    for j in 2..=k {
        b = -b / Rational::from_integer(BigInt::from(j));
    }
    assert_eq!(b, alternating(k) / Rational::from_integer(factorial(k)));
    b
}

/// `B(1) = 1`, `B(k) = -k B(k-1)`; equals `(-1)^{k-1} k!`.
pub fn base_relative(k: u32) -> Rational {
    assert!(k >= 1, "base values start at degree 1");
    let mut b = Rational::one();
    for j in 2..=k {
        b = -b * Rational::from_integer(BigInt::from(j));
    }
    assert_eq!(b, alternating(k) * Rational::from_integer(factorial(k)));
    b
}
