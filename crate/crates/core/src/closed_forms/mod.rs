//! Canonical invariant keys and the closed-form values: dimension-zero
//! invariants, the Maulik–Pandharipande descendant formulas for d = 1, 2,
//! F0 relative values, and the relative/absolute normalization rules.

mod key;
mod values;

pub use key::{Contact, InsertionKind, InvariantKey, Parity, SpinKey, Target};
pub use values::{
    closed_value, dimension_chi, f0_relative, gt_dim0, gw_dim0, mp_descendant, normalize_relative,
    pretty_symbol,
};
