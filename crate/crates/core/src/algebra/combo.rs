use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::Result;

/// A commutative monomial in opaque invariant symbols.
///
/// Each factor is a canonical key string; the empty monomial is the unit `1`.
/// Factors are kept sorted so equal monomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymbolKey(Vec<String>);

impl SymbolKey {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn atom(key: impl Into<String>) -> Self {
        Self(vec![key.into()])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[String] {
        &self.0
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut f: Vec<String> = self.0.iter().chain(other.0.iter()).cloned().collect();
        f.sort();
        Self(f)
    }

    /// Inverse of `Display`: factors joined by `*`, `1` for the unit.
    pub fn parse(s: &str) -> Self {
        if s == "1" {
            return Self::one();
        }
        let mut f: Vec<String> = s.split('*').map(str::to_string).collect();
        f.sort();
        Self(f)
    }

    /// Renders each factor through `name`, joined by `·`.
    pub fn render_with(&self, name: &dyn Fn(&str) -> String) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.0.iter().map(|f| name(f)).collect::<Vec<_>>().join("·")
    }
}

impl fmt::Display for SymbolKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.0.join("*"))
        }
    }
}

/// Finite Q-linear combination of monomials in opaque symbols.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolicCombo {
    terms: BTreeMap<SymbolKey, Rational>,
}

impl SymbolicCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(SymbolKey::one(), c)
    }

    pub fn symbol(key: impl Into<String>) -> Self {
        Self::term(SymbolKey::atom(key), Rational::one())
    }

    pub fn term(key: SymbolKey, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, c);
        out
    }

    pub fn add_term(&mut self, key: SymbolKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &SymbolKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_of(&self, atom: &str) -> Rational {
        self.coeff(&SymbolKey::atom(atom))
    }

    /// The value when the combination has no symbolic part.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&SymbolKey::one()).cloned(),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SymbolKey, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product in the commutative monomial algebra.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                out.add_term(ka.times(kb), va * vb);
            }
        }
        out
    }

    /// Replaces every occurrence of the atom `atom` (to first order; monomials
    /// containing it more than once are expanded fully) by `value`.
    pub fn substitute(&self, atom: &str, value: &Self) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let mut rest = Vec::new();
            let mut hits = 0usize;
            for f in k.factors() {
                if f == atom {
                    hits += 1;
                } else {
                    rest.push(f.clone());
                }
            }
            let mut piece = Self::term(SymbolKey(rest), v.clone());
            for _ in 0..hits {
                piece = piece.mul(value);
            }
            out = out.add(&piece);
        }
        out
    }

    /// Atoms occurring anywhere in the combination, sorted.
    pub fn atoms(&self) -> Vec<String> {
        let mut a: Vec<String> = self
            .terms
            .keys()
            .flat_map(|k| k.factors().iter().cloned())
            .collect();
        a.sort();
        a.dedup();
        a
    }

    /// `{symbol: "p/q"}` with canonical symbol strings.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.terms {
            m.insert(k.to_string(), Value::String(format_rational(v)));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut out = Self::zero();
        if let Value::Object(m) = v {
            for (k, val) in m {
                let s = val.as_str().unwrap_or_default();
                out.add_term(SymbolKey::parse(k), parse_rational(s)?);
            }
        }
        Ok(out)
    }

    /// Human-readable `c * X + ...`, naming atoms through `name`.
    pub fn render_with(&self, name: &dyn Fn(&str) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let mag = v.abs();
            let body = if k.is_one() {
                format_rational(&mag)
            } else {
                format!("{} * {}", format_rational(&mag), k.render_with(name))
            };
            match (i, v.is_negative()) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for SymbolicCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with(&|s| s.to_string()))
    }
}

impl Add for &SymbolicCombo {
    type Output = SymbolicCombo;
    fn add(self, rhs: Self) -> SymbolicCombo {
        SymbolicCombo::add(self, rhs)
    }
}

impl Sub for &SymbolicCombo {
    type Output = SymbolicCombo;
    fn sub(self, rhs: Self) -> SymbolicCombo {
        SymbolicCombo::sub(self, rhs)
    }
}

impl Neg for &SymbolicCombo {
    type Output = SymbolicCombo;
    fn neg(self) -> SymbolicCombo {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pow2, rat};

    #[test]
    fn cancellation_leaves_nothing() {
        let x = SymbolicCombo::symbol("X");
        let sum = x.add(&x.scale(&rat(-1, 1)));
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn scaling() {
        let a = SymbolicCombo::term(SymbolKey::atom("X"), rat(1, 2))
            .add(&SymbolicCombo::term(SymbolKey::atom("Y"), rat(3, 1)));
        let b = a.scale(&rat(2, 1));
        assert_eq!(b.coeff_of("X"), rat(1, 1));
        assert_eq!(b.coeff_of("Y"), rat(6, 1));
        assert!(a.scale(&rat(0, 1)).is_zero());
    }

    #[test]
    fn doubling_powers_of_two() {
        let h1 = 37;
        let x = SymbolicCombo::term(SymbolKey::atom("X"), pow2(h1));
        assert_eq!(x.add(&x).coeff_of("X"), pow2(h1 + 1));
    }

    #[test]
    fn products_and_substitution() {
        let x = SymbolicCombo::symbol("X");
        let c = SymbolicCombo::symbol("C");
        let xc = x.mul(&c).scale(&rat(3, 1));
        assert_eq!(xc.to_string(), "3 * C·X");
        let replaced = xc.substitute("X", &SymbolicCombo::constant(rat(-2, 1)));
        assert_eq!(replaced.coeff_of("C"), rat(-6, 1));
        assert!(x.mul(&SymbolicCombo::zero()).is_zero());
    }

    #[test]
    fn rendering() {
        let c = SymbolicCombo::term(SymbolKey::atom("A"), rat(-4, 1))
            .add(&SymbolicCombo::constant(rat(1, 2)));
        assert_eq!(c.to_string(), "1/2 - 4 * A");
        assert_eq!(SymbolicCombo::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let c = SymbolicCombo::term(SymbolKey::atom("A"), rat(-4, 3))
            .add(&SymbolicCombo::symbol("B").mul(&SymbolicCombo::symbol("A")))
            .add(&SymbolicCombo::constant(rat(7, 1)));
        let back = SymbolicCombo::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
