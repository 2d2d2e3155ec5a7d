//! Degeneration sum formulas as evaluation and rewriting rules.
//!
//! The distinguished genus-zero symbol `GT_(2)^{loc,0,+}` is never assigned a
//! value; every identity here is checked as an equality of
//! [`SymbolicCombo`](crate::algebra::SymbolicCombo)s over it.

mod blowup;
mod degeneration;
mod mp_reduction;
mod registry;
mod trace;

pub use blowup::{blowup_sum_rhs, blowup_sum_symbolic};
pub use degeneration::{
    contact_two_symbol, f1_contribution, genus_zero_symbol, nonseparating_descent,
    reduce_genus_zero, separating_split, separating_split_from_sum, substitute_genus_zero,
};
pub use mp_reduction::{verify_mp_reduction, MpReduction};
pub use registry::Registry;
pub use trace::{ReductionTrace, TraceStep};
