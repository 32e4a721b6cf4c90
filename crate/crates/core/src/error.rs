use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

/// Errors raised while validating inputs or running a computation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("not associative: (b{0} b{1}) b{2} != b{0} (b{1} b{2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit law fails at basis vector b{0}")]
    UnitLaw(usize),
    #[error("bad idempotent set: {reason} (idempotents {first} and {second})")]
    BadIdempotents { first: usize, second: usize, reason: String },
    #[error("declared radical rejected: {0}")]
    BadRadical(String),
    #[error("no radical available: characteristic {0} is at most the dimension {1} and none was declared")]
    UnsupportedCharacteristic(u64, usize),
    #[error("module action law fails for basis pair (b{0}, b{1})")]
    ActionLaw(usize, usize),
    #[error("unit does not act as the identity")]
    ActionUnit,
    #[error("left and right actions fail to commute for (a{0}, b{1})")]
    BimoduleCommute(usize, usize),
    #[error("map does not intertwine the action of basis vector b{0}")]
    NotIntertwining(usize),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error("missing idempotents or radical: {0}")]
    MinimalUnavailable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quiver error: {0}")]
    Quiver(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
