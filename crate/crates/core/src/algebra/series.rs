use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Coefficients of `t^1 .. t^T` of a power series without constant term.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSeries {
    order: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl DegreeSeries {
    pub fn zero(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroTruncation);
        }
        Ok(Self {
            order,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn from_coeffs<I>(order: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut s = Self::zero(order)?;
        for (d, c) in coeffs {
            s.set(d, c)?;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, degree: usize, c: Rational) -> Result<()> {
        if degree == 0 || degree > self.order {
            return Err(Error::OutOfWindow {
                degree,
                order: self.order,
            });
        }
        if c.is_zero() {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, c);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dense coefficient vector indexed by degree, slot 0 holding `constant`.
    fn dense(&self, constant: Rational) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.order + 1];
        v[0] = constant;
        for (d, c) in &self.coeffs {
            v[*d] = c.clone();
        }
        v
    }

    fn from_dense(order: usize, v: Vec<Rational>) -> Self {
        let coeffs = v
            .into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { order, coeffs }
    }

    /// `exp(sum s_d t^d) - 1`, truncated at the same order.
    ///
    /// Uses `n g_n = sum_{k=1}^n k s_k g_{n-k}` with `g_0 = 1`.
    pub fn exp(&self) -> Self {
        let s = self.dense(Rational::zero());
        let mut g = vec![Rational::zero(); self.order + 1];
        g[0] = Rational::from_integer(1.into());
        for n in 1..=self.order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !s[k].is_zero() {
                    acc += Rational::from_integer(k.into()) * &s[k] * &g[n - k];
                }
            }
            g[n] = acc / Rational::from_integer(n.into());
        }
        Self::from_dense(self.order, g)
    }

    /// `log(1 + sum s_d t^d)`, truncated at the same order.
    ///
    /// From `h' = h l'`: `n l_n = n s_n - sum_{k=1}^{n-1} k l_k s_{n-k}`.
    pub fn log(&self) -> Self {
        let s = self.dense(Rational::zero());
        let mut l = vec![Rational::zero(); self.order + 1];
        for n in 1..=self.order {
            let mut acc = Rational::from_integer(n.into()) * &s[n];
            for k in 1..n {
                if !l[k].is_zero() && !s[n - k].is_zero() {
                    acc -= Rational::from_integer(k.into()) * &l[k] * &s[n - k];
                }
            }
            l[n] = acc / Rational::from_integer(n.into());
        }
        Self::from_dense(self.order, l)
    }

    /// Termwise sum; the result keeps the smaller truncation order.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut v = vec![Rational::zero(); order + 1];
        for (d, c) in self.iter().chain(other.iter()) {
            if d <= order {
                v[d] += c;
            }
        }
        Self::from_dense(order, v)
    }

    /// `(1 + A)(1 + B) - 1`, truncated at the smaller order.
    pub fn one_plus_product(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let a = self.dense(Rational::from_integer(1.into()));
        let b = other.dense(Rational::from_integer(1.into()));
        let mut v = vec![Rational::zero(); order + 1];
        for (i, ai) in a.iter().enumerate().take(order + 1) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
                v[i + j] += ai * bj;
            }
        }
        Self::from_dense(order, v)
    }
}

impl fmt::Display for DegreeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {}", format_rational(c))?;
        }
        write!(f, "}} + O(t^{})", self.order + 1)
    }
}
