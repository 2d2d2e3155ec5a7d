use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational {0:?}: expected \"p/q\" or \"p\"")]
    ParseRational(String),
    #[error("invalid partition {0:?}")]
    ParsePartition(String),
    #[error("invalid invariant key {key:?}: {reason}")]
    ParseKey { key: String, reason: String },
    #[error("invalid parity {0:?}: expected \"+\" or \"-\"")]
    ParseParity(String),
    #[error("genus 0 spin curve must be even")]
    OddGenusZero,
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("degree {0} not covered by a closed form (only d = 1, 2)")]
    UnsupportedDegree(u32),
    #[error("partition {partition} has degree {found}, expected {expected}")]
    DegreeMismatch {
        partition: String,
        found: u32,
        expected: u32,
    },
    #[error("truncation order must be at least 1")]
    ZeroTruncation,
    #[error("degree {degree} outside truncation window 1..={order}")]
    OutOfWindow { degree: usize, order: usize },
    #[error("key shape not covered by the relative/absolute normalization: {0}")]
    NotNormalizable(String),
    #[error("split of {len} insertions into ({n1}, {n2}) is inconsistent")]
    BadSplit { len: usize, n1: usize, n2: usize },
    #[error("missing registry entry {0}")]
    MissingRegistryEntry(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("recursion step needs at least 3 insertions, got {0}")]
    TooFewInsertions(usize),
    #[error("insertion {index} has no descendant power to trade (s = 0)")]
    NoDescendant { index: usize },
    #[error("insertion index {index} out of range for {len} insertions")]
    BadIndex { index: usize, len: usize },
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("cannot remove descended insertion; no plain F* insertion present")]
    NoPlainInsertion,
    #[error("invalid expression {key:?}: {reason}")]
    ParseExpr { key: String, reason: String },
    #[error("registry {path}: {reason}")]
    Registry { path: PathBuf, reason: String },
    #[error("partition {0} is not a partition of 2")]
    NotDegreeTwo(String),
}
