//! Exact local Gromov–Witten / Gromov–Taubes invariants of spin curves.
//!
//! The crate evaluates closed forms for low-degree local invariants, runs the
//! degeneration sum formulas as rewriting rules over opaque invariant
//! symbols, and replays the topological-recursion reductions that relate
//! descendant and relative invariants. Every value is an exact rational.

pub mod algebra;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod exec;
pub mod partitions;
pub mod sum_engine;
pub mod trr;
pub mod verify;

pub use error::{Error, Result};
