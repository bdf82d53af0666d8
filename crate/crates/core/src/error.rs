use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point index {index} out of range for a space of {len} points")]
    PointOutOfRange { index: usize, len: usize },
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("invalid generator system: {0}")]
    InvalidGenerators(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("empty point set")]
    EmptySet,
    #[error("power 0 is not an action power")]
    ZeroPower,
    #[error("generator `{0}` of one system is not reachable in the other within {1} letters")]
    HorizonExhausted(String, usize),
    #[error("realized group did not saturate within radius {radius} ({elements} elements)")]
    HorizonLimited { radius: usize, elements: usize },
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("pseudo-orbit assignment has {got} entries, ball has {expected}")]
    IncompleteAssignment { expected: usize, got: usize },
    #[error("separation table is not exact for pair ({0}, {1})")]
    InexactSeparation(usize, usize),
    #[error("cover does not cover point {0}")]
    NotACover(usize),
    #[error("generator systems differ: {0}")]
    GeneratorMismatch(String),
    #[error("delta {delta} is not below the covering radius {delta0}")]
    DeltaTooLarge { delta: Scalar, delta0: Scalar },
    #[error("pseudo-orbit cannot be lifted consistently at element `{0}`")]
    LiftObstructed(String),
    #[error("stability margin violated: {0}")]
    ShadowingMarginTooSmall(String),
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("action file: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
