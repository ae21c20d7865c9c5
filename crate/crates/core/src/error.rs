use alloc::string::String;

/// Errors raised by the operator library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty coordinate vector")]
    EmptyVector,
    #[error("a simplex point needs at least 2 coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("coordinate {index} is negative ({value:e})")]
    NegativeCoordinate { index: usize, value: f64 },
    #[error("coordinates sum to {sum:.17}, expected 1")]
    SumOutOfRange { sum: f64 },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("malformed cycle notation at byte {position}: {reason}")]
    MalformedSyntax { position: usize, reason: &'static str },
    #[error("symbol {symbol} repeated in cycle notation")]
    RepeatedSymbol { symbol: usize },
    #[error("symbol {symbol} outside 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("not a bijection of 1..={n}")]
    NotABijection { n: usize },
    #[error("permutation order overflows u64")]
    OrderOverflow,

    #[error("dimension {m} is too small (need at least {min})")]
    DimensionTooSmall { m: usize, min: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coefficient p[{i},{j},{k}] is negative ({value:e})")]
    NegativeCoefficient { i: usize, j: usize, k: usize, value: f64 },
    #[error("coefficient p[{i},{j},{k}] is not finite")]
    NonFiniteCoefficient { i: usize, j: usize, k: usize },
    #[error("coefficients of pair ({i},{j}) sum to {sum:.17}, expected 1")]
    RowSumNotOne { i: usize, j: usize, sum: f64 },
    #[error("p[{i},{j},{k}] and p[{j},{i},{k}] differ")]
    AsymmetricInput { i: usize, j: usize, k: usize },
    #[error("coefficient p[{i},{j},{k}] given twice")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("weight {0} outside [0, 1]")]
    WeightOutOfRange(f64),

    #[error("unknown operator family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} requires a parameter")]
    MissingParameter { family: &'static str },
    #[error("family {family} takes no parameter")]
    UnexpectedParameter { family: &'static str },
    #[error("family {family} requires a permutation")]
    MissingPermutation { family: &'static str },
    #[error("family {family} takes no permutation")]
    UnexpectedPermutation { family: &'static str },
    #[error("permutation acts on {found} symbols, expected {expected}")]
    PermutationSizeMismatch { expected: usize, found: usize },

    #[error("{value} is outside the domain [0, 1]")]
    DomainViolation { value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("point is not a fixed point (residual {residual:e})")]
    NotAFixedPoint { residual: f64 },
    #[error("trajectory tail of {available} points at stride {stride} is too short (need {needed} at stride 1)")]
    InsufficientTail { available: usize, needed: usize, stride: usize },
    #[error("Lyapunov function {function} does not apply to {operator}")]
    InapplicableFunction { function: String, operator: String },
    #[error("invariant set {set} does not apply to {operator}")]
    InapplicableSet { set: String, operator: String },
    #[error("trajectory never entered {{x_m < 1/2}} within {steps} steps")]
    NeverEntersRegion { steps: usize },
    #[error("eigenvalue iteration did not converge")]
    EigenNoConvergence,
}

pub type Result<T> = core::result::Result<T, Error>;
