//! Exact scalars, truncated degree series and free-module combinations.

mod combo;
mod rational;
mod series;

pub use combo::{SymbolKey, SymbolicCombo};
pub use rational::{binomial, factorial, format_rational, parse_rational, pow2, rat, Rational};
pub use series::DegreeSeries;
