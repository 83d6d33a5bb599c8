use thiserror::Error;

/// Errors raised anywhere in the estimation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient vectors must have equal length >= 2 (got n: {n}, d: {d})")]
    BadPlantShape { n: usize, d: usize },

    #[error("plant is not causal: {0}")]
    NonCausal(String),

    #[error("numerator and denominator are not coprime (|resultant| = {resultant:e}, threshold {threshold:e})")]
    NotCoprime { resultant: f64, threshold: f64 },

    #[error("Toeplitz Bezoutian is singular")]
    SingularBezoutian,

    #[error("window length {got} does not match plant order {expected}")]
    WindowLength { expected: usize, got: usize },

    #[error("disturbance {name}[{index}] = {value} lies outside [-1, 1]")]
    DisturbanceOutOfBounds { name: &'static str, index: usize, value: f64 },

    #[error("sequence lengths differ: {0}")]
    LengthMismatch(String),

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("point is not on the polytope boundary (distance {distance:e})")]
    NotOnBoundary { distance: f64 },

    #[error("polytope has empty interior")]
    DegeneratePolytope,

    #[error("supporting cone is empty")]
    ConePrecondition,

    #[error("uncertainty set is empty at step {k}: measurement inconsistent with model")]
    EmptyFront { k: usize },

    #[error("uncertainty set has empty interior at step {k}")]
    DegenerateFront { k: usize },

    #[error("estimator program is infeasible (uncertainty set empty)")]
    Infeasible,

    #[error("regulator program is unbounded (uncertainty set empty)")]
    Unbounded,

    #[error("pair is not feasible: {0}")]
    NotFeasible(String),

    #[error("exact set recursion produced an empty set at step {step}")]
    EmptySet { step: usize },

    #[error("operation supports plant order <= {max}, got {got}")]
    UnsupportedOrder { max: usize, got: usize },

    #[error("horizon {k} is shorter than the plant order {m}")]
    HorizonTooShort { k: usize, m: usize },

    #[error("simplex iteration limit reached")]
    IterationLimit,

    #[error("simplex numerical breakdown: {0}")]
    NumericalBreakdown(&'static str),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
