use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::IntPoly;
use crate::tuple::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("unfactored cofactor {cofactor} (effort bound {effort} exhausted)")]
    Unfactored { cofactor: BigInt, effort: u64 },
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("polynomial is reducible over Q; factor {factor}")]
    Reducible { factor: IntPoly },
    #[error("parse error at position {position}: {message} (near `{token}`)")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("tuple is not realizable: {0}")]
    NotRealizable(Violation),
    #[error("ideal is not principal; class vector {0:?}")]
    NotPrincipal(Vec<BigInt>),
    #[error("class group could not be certified: {0}")]
    ClassGroupUncertified(String),
    #[error("search effort exhausted: {0}")]
    EffortExceeded(String),
    #[error("prime {prime} is not above the given prime")]
    NotAbove { prime: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
