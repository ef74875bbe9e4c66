//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown alternative label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate alternative label `{0}`")]
    DuplicateLabel(String),
    #[error("a menu must contain at least one alternative")]
    EmptyMenu,
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("alphabet has {0} alternatives, limit is {1}")]
    AlphabetTooLarge(usize, usize),
    #[error("alternative {alt} is not a member of menu {menu:?}")]
    AlternativeNotInMenu { alt: usize, menu: u64 },
    #[error("menu {0:?} is outside the rule's domain")]
    OutOfDomain(u64),
    #[error("consideration probability gamma({0}) = {1} must lie strictly inside (0, 1)")]
    GammaOutOfRange(usize, f64),
    #[error("filter weights must be nonnegative and sum to one (sum = {0})")]
    WeightsNotSimplex(f64),
    #[error("filter {filter} violates the competition-filter property at alternative {alt}, T={sub:?}, S={sup:?}")]
    FilterViolation {
        filter: usize,
        alt: usize,
        sub: u64,
        sup: u64,
    },
    #[error("per-menu sample size must be positive")]
    SizeZero,
    #[error("binary attention constraints require an eta threshold")]
    EtaMissing,
    #[error("eta = {0} must lie in (0, 1]")]
    EtaOutOfRange(f64),
    #[error("choice rule has no entry for menu {0:?}")]
    MenuMissing(u64),
    #[error("probabilities for menu {menu:?} sum to {sum}, expected 1")]
    NotAProbability { menu: u64, sum: f64 },
    #[error("dataset contains no observations")]
    EmptyDataset,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("statistic {0} has zero variance and cannot be normalized")]
    DegenerateStatistic(usize),
    #[error("significance level alpha = {0} must lie strictly inside (0, 1)")]
    AlphaOutOfRange(f64),
    #[error("critical value simulation needs at least {min} draws, got {got}")]
    TooFewDraws { min: usize, got: usize },
    #[error("attention system is infeasible for menu {0:?}")]
    InfeasibleSystem(u64),
    #[error("no superset of menu {0:?} is present in the domain")]
    NoSupersetInDomain(u64),
    #[error("no subset of menu {0:?} containing the target alternative is present in the domain")]
    NoSubsetInDomain(u64),
    #[error("all probability mass in menu {0:?} falls on the default option")]
    AllMassOnDefault(u64),
    #[error("default option must be a member of every menu, missing from {0:?}")]
    DefaultMissing(u64),
    #[error("line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("line {line}: chosen alternative `{choice}` is not in its menu")]
    ChoiceNotInMenu { line: usize, choice: String },
    #[error("input file has no data rows")]
    EmptyFile,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
