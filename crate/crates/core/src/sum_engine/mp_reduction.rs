//! Reduction of the MP descendant formulas for `d = 1, 2` to genus zero: the
//! blow-up sum with all insertions on the `F0` side, after replacing each
//! `GT_(2)^{loc,h,p}` by its genus-zero multiple, must equal the genus-zero
//! expansion times `(-1)^p` (d = 1) or `(-1)^p 2^h` (d = 2).

use num_traits::Zero;

use super::blowup::blowup_sum_symbolic;
use super::degeneration::substitute_genus_zero;
use super::trace::ReductionTrace;
use crate::algebra::{pow2, rat, Rational, SymbolicCombo};
use crate::closed_forms::{InsertionKind, InvariantKey, SpinKey};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MpReduction {
    pub holds: bool,
    /// The expected ratio `(-1)^p` or `(-1)^p 2^h`.
    pub ratio: Rational,
    /// Blow-up expansion at `(h, p)` after genus reduction.
    pub reduced: SymbolicCombo,
    /// Blow-up expansion at `(0, +)`.
    pub genus_zero: SymbolicCombo,
    pub trace: ReductionTrace,
}

pub fn verify_mp_reduction(s: SpinKey, d: u32, ks: &[u32]) -> Result<MpReduction> {
    let ratio = match d {
        1 => rat(s.sign(), 1),
        2 => rat(s.sign(), 1) * pow2(s.genus() as i64),
        _ => return Err(Error::UnsupportedDegree(d)),
    };
    let split = (0, ks.len());
    let lhs = SymbolicCombo::symbol(
        InvariantKey::absolute(s, d)?
            .with_insertions(InsertionKind::Tau, ks.to_vec())?
            .canonical(),
    );
    let expanded = blowup_sum_symbolic(d, s, ks, split)?;
    let reduced = substitute_genus_zero(&expanded);
    let genus_zero = blowup_sum_symbolic(d, SpinKey::genus_zero(), ks, split)?;

    let mut trace = ReductionTrace::new();
    trace.push("blow-up sum", lhs, expanded.clone());
    trace.push("genus reduction of GT_(2)", expanded, reduced.clone());

    let holds = reduced.sub(&genus_zero.scale(&ratio)).is_zero();
    debug_assert!(!ratio.is_zero());
    Ok(MpReduction {
        holds,
        ratio,
        reduced,
        genus_zero,
        trace,
    })
}
