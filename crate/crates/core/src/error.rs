use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic {0} is even; only odd prime powers are supported")]
    EvenCharacteristic(u64),
    #[error("extension degree {0} is out of range")]
    DegreeOutOfRange(u32),
    #[error("size {size} exceeds the configured cap {cap}")]
    SizeCapExceeded { size: u128, cap: u128 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid field element: {0}")]
    BadElement(String),
    #[error("grid functions live on different grids")]
    GridMismatch,
    #[error("invalid exponent {0}: must be >= 1 or infinity")]
    BadExponent(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("the variety parameter must be nonzero")]
    ZeroParameter,
    #[error("dimension {0} is odd; this variety needs an even dimension")]
    OddDimension(usize),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("stratum index {k} is out of range for dimension {d}")]
    BadStratum { k: usize, d: usize },
    #[error("Kloosterman coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("{what} needs {needed} steps, over the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("operation requires a Hamming variety")]
    NotHamming,
    #[error("variety has no points")]
    EmptyVariety,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
