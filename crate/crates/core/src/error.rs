use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotUnimodularPair: |det| of the pair is {0}, expected 1")]
    NotUnimodularPair(BigInt),

    #[error("NotCoprime: gcd({0}, {1}) != 1")]
    NotCoprime(BigInt, BigInt),

    #[error("NonPositive: {0} must be positive")]
    NonPositive(BigInt),

    #[error("InvalidRange: {0}")]
    InvalidRange(String),

    #[error("NotUnimodular: det = {0}, expected +1 or -1")]
    NotUnimodular(BigInt),

    #[error("NotSL2: det = {0}, expected +1")]
    NotSL2(BigInt),

    #[error("RadiusTooLarge: radius {radius} exceeds cap {cap}")]
    RadiusTooLarge { radius: usize, cap: usize },

    #[error("PeriodicOperator: the operator has finite order")]
    PeriodicOperator,

    #[error("NotHyperbolic: |trace| = {0} is not greater than 2")]
    NotHyperbolic(BigInt),

    #[error("EqualEndpoints: both points are {0}")]
    EqualEndpoints(String),

    #[error("SideNotInTriangle: {0}")]
    SideNotInTriangle(String),

    #[error("VertexOfTriangle: {0} is a vertex of the triangle")]
    VertexOfTriangle(String),

    #[error("NotFareyTriangle: {0}")]
    NotFareyTriangle(String),

    #[error("NotMinimalMatrix: c(A) = {c_matrix} but the operator complexity is {c_operator}")]
    NotMinimalMatrix { c_matrix: u64, c_operator: u64 },

    #[error("ZeroComplexity: the operator has complexity 0, no swept cells exist")]
    ZeroComplexity,

    #[error("Parse: {0}")]
    Parse(String),
}
