use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyInput,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators share the common factor {0}")]
    NonCoprime(u64),
    #[error("generator {generator} exceeds the configured cap {cap}")]
    GeneratorTooLarge { generator: u64, cap: u64 },
    #[error("{0} is not an element of the monoid")]
    NotInMonoid(u64),
    #[error("factorization enumeration exceeded {0} candidates")]
    EnumerationTooLarge(u64),
    #[error("a length table of {requested} entries exceeds the limit {limit}")]
    TableTooLarge { requested: u64, limit: u64 },
    #[error("no proper subcollection exists")]
    NoSubcollection,
    #[error("s = {s} is outside 0..{k}")]
    SOutOfRange { s: u64, k: u64 },
    #[error("({c}, {s}, {x}) is not an elasticity tuple")]
    InvalidTuple { c: u64, s: u64, x: u64 },
    #[error("expected a positive integer, got {0}")]
    NonIntegerResult(String),
    #[error("monoid is not arithmetical")]
    NotArithmetical,
    #[error("construction requires gcd(a, k) >= 2")]
    NotApplicable,
    #[error("incompatible arithmetical parameters")]
    IncompatibleParams,
    #[error("monoid has a single generator")]
    SingleGenerator,
    #[error("sequence index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
