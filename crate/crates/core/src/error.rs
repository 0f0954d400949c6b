use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// reported to a user without a backtrace.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("no generators supplied")]
    NoGenerators,
    #[error("transformation of degree {found} where degree {expected} was expected")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image {image} out of range for degree {degree}")]
    ImageOutOfRange { image: usize, degree: usize },
    #[error("element {0} is not an idempotent")]
    NotIdempotent(usize),
    #[error("J-class of element {0} is not regular")]
    NonRegular(usize),
    #[error("size bound exceeded: {what} has size {size} > {bound}")]
    BoundExceeded { what: String, size: usize, bound: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a stochastic matrix: {0}")]
    NotStochastic(String),
    #[error("not a probability distribution: {0}")]
    NotDistribution(String),
    #[error("support of {0} is not row monomial")]
    NotRowMonomial(String),
    #[error("index {index} out of range ({len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("characteristic {p} divides the maximal subgroup orders {orders:?}")]
    CharacteristicClash { p: u64, orders: Vec<usize> },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("covering check failed: {0}")]
    Covering(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
