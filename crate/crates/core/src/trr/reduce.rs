//! Full reduction of a [`MixedExpr`] to opaque pure-`phi` symbols by repeated
//! recursion steps, with a shared memo table.

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use parking_lot::RwLock;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::expr::MixedExpr;
use super::steps::{append_divisor, trr_step};
use crate::algebra::{Rational, SymbolicCombo};
use crate::error::{Error, Result};

/// Which descendant insertion a reduction step rewrites.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Lowest index in the sorted insertion list.
    #[default]
    LeftmostFirst,
    RightmostFirst,
    /// Pseudo-random choice, deterministic in the seed and the expression.
    Seeded(u64),
}

/// Memoizing reducer. Safe to share across threads: concurrent lookups read
/// the memo, and a racing duplicate computation writes the same value.
#[derive(Debug, Default)]
pub struct Reducer {
    strategy: Strategy,
    memo: RwLock<HashMap<String, SymbolicCombo>>,
    steps: AtomicUsize,
}

impl Reducer {
    pub fn new(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Number of recursion steps applied so far (memo hits excluded).
    pub fn steps_taken(&self) -> usize {
        self.steps.load(Ordering::Relaxed)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }

    fn pick(&self, e: &MixedExpr) -> usize {
        let candidates = e.descendant_indices();
        match self.strategy {
            Strategy::LeftmostFirst => candidates[0],
            Strategy::RightmostFirst => candidates[candidates.len() - 1],
            Strategy::Seeded(seed) => {
                let mut h = DefaultHasher::new();
                e.hash(&mut h);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h.finish());
                *candidates.choose(&mut rng).expect("nonempty candidates")
            }
        }
    }

    /// Reduces `e` to a combination of pure-`phi` symbols of the same flavor.
    pub fn reduce(&self, e: &MixedExpr) -> Result<SymbolicCombo> {
        if e.is_pure_phi() {
            return Ok(SymbolicCombo::symbol(e.canonical()));
        }
        if e.len() < 3 {
            return Err(Error::TooFewInsertions(e.len()));
        }
        let key = e.canonical();
        if let Some(hit) = self.memo.read().get(&key) {
            return Ok(hit.clone());
        }
        let rewritten = trr_step(e, self.pick(e))?;
        self.steps.fetch_add(1, Ordering::Relaxed);
        let mut out = SymbolicCombo::zero();
        for (sym, c) in rewritten.iter() {
            let next: MixedExpr = sym.factors()[0].parse()?;
            out = out.add(&self.reduce(&next)?.scale(c));
        }
        self.memo.write().insert(key, out.clone());
        Ok(out)
    }

    /// Reduction for any number of insertions: pad with two plain `F*`
    /// insertions (multiplying by `d^2`), reduce, and divide by `d^2`.
    pub fn reduce_padded(&self, e: &MixedExpr) -> Result<SymbolicCombo> {
        let (f1, once) = append_divisor(e);
        let (f2, twice) = append_divisor(&once);
        Ok(self
            .reduce(&twice)?
            .scale(&(Rational::from_integer(BigInt::from(1)) / (f1 * f2))))
    }
}

/// Leftmost-first reduction with a fresh memo.
pub fn reduce_full(e: &MixedExpr) -> Result<SymbolicCombo> {
    Reducer::default().reduce(e)
}
