use thiserror::Error;

use crate::lemma::SweepReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank-too-small: type D needs rank >= {min}, got {rank}")]
    RankTooSmall { rank: usize, min: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enumeration-too-large: W(D_{rank}) exceeds the enumeration ceiling (rank {ceiling})")]
    EnumerationTooLarge { rank: usize, ceiling: usize },

    #[error("invalid simple root index {index} for rank {rank} (expected 1..={rank})")]
    InvalidSimpleRootIndex { index: usize, rank: usize },

    #[error("invalid Weyl element: {0}")]
    InvalidWeylElement(String),

    #[error(
        "no direct Kostant construction for deleted set {deleted:?} (only {{1}} is supported)"
    )]
    NoDirectConstruction { deleted: Vec<usize> },

    #[error("weights-out-of-order: need k >= l, got k={k}, l={l}")]
    WeightsOutOfOrder { k: i64, l: i64 },

    #[error("weight {mu:?} is not dominant: need mu_1 >= mu_2 >= ... >= mu_(n-1) >= |mu_n|")]
    NotDominant { mu: Vec<i64> },

    #[error("n must be even and >= 2, got {n}")]
    OddN { n: usize },

    #[error("invalid d window [{lo}, {hi}]: {reason}")]
    InvalidDWindow { lo: i64, hi: i64, reason: String },

    #[error("could not start worker pool: {0}")]
    ThreadPool(String),

    #[error("sweep needs {required} instances but the budget is {budget}")]
    BudgetExceeded {
        budget: usize,
        required: usize,
        checkpoint: Box<SweepReport>,
    },
}
