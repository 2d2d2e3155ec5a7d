//! Topological recursion for descendant invariants of the genus-zero spin
//! geometry, as a rewriting system over opaque pure-`phi` invariants.

mod base;
mod expr;
mod reduce;
mod steps;
mod verify;

pub use base::{base_absolute, base_relative};
pub use expr::{Flavor, MixedExpr, PurePhiSymbol};
pub use reduce::{reduce_full, Reducer, Strategy};
pub use steps::{append_divisor, remove_divisor, trr_absolute_step, trr_relative_step, trr_step};
pub use verify::{
    bounded_exprs, identify_relative, insertion_multisets, on_shell_exprs, verify_rel_equivalence,
    verify_rel_equivalence_with, RelEquivalence,
};
