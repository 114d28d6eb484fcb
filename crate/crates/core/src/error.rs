use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what} must be an odd prime, got {value}")]
    EvenPrime { what: &'static str, value: u64 },
    #[error("ell = {0} coincides with the defining characteristic")]
    DefiningCharacteristic(u64),
    #[error("{0} is divisible by the modulus {1}")]
    NotInvertible(u64, u64),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("beta-set length {len} is shorter than the {parts} parts of the partition")]
    BetaSetTooShort { len: usize, parts: usize },
    #[error("not a core: {0}")]
    NotACore(String),
    #[error("malformed label: {0}")]
    MalformedLabel(String),
    #[error("reconstruction mismatch: {0}")]
    Reconstruction(String),
}
