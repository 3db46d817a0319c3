use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix not symmetric: entry ({i},{j}) differs from ({j},{i})")]
    NotSymmetric { i: usize, j: usize },

    #[error("form not unimodular (det = {det})")]
    NotUnimodular { det: String },

    #[error("w2 not characteristic for the intersection form")]
    NotCharacteristic,

    #[error("c1_tangent is not an integral lift of w2 (slot {slot})")]
    NotALift { slot: usize },

    #[error("c1_class is not an integral lift of w2 (slot {slot})")]
    C1NotALift { slot: usize },

    #[error("mod-2 vector has entry {value} at slot {slot}; expected 0 or 1")]
    NotMod2 { slot: usize, value: i64 },

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("cubic tensor not symmetric at ({i},{j},{k})")]
    AsymmetricTensor { i: usize, j: usize, k: usize },

    #[error("unknown catalog manifold `{0}` (expected S4, CP2, CP2bar or S2xS2)")]
    UnknownManifold(String),

    #[error("bundle base does not match the given 4-manifold")]
    BaseMismatch,

    #[error("rank {rank} exceeds the supported maximum {max} for {what}")]
    RankTooLarge {
        what: &'static str,
        rank: usize,
        max: usize,
    },

    #[error("unsupported prime {0} (expected one of 2, 3, 5, 7)")]
    UnsupportedPrime(u32),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("search bound must be at least 1")]
    InvalidBound,

    #[error("search step budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("M_k is only defined for k = 1, 2 (got {0})")]
    InvalidTransitionIndex(u32),

    #[error("matrix is singular")]
    Singular,
}
