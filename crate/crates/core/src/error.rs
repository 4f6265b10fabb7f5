use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2 <= p < 2^16")]
    ModulusOutOfRange(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different field contexts")]
    CtxMismatch,
    #[error("step {step} does not divide the absolute degree {degree}")]
    BadStep { step: usize, degree: usize },
    #[error("expected {expected} coordinates, got {actual}")]
    BadLength { expected: usize, actual: usize },
    #[error("modulus polynomial must be monic of degree >= 1")]
    BadModulus,
    #[error("value does not lie in the prime field")]
    NotInPrimeField,
    #[error("conjugate sum (trace) is zero")]
    ZeroTrace,
    #[error("x^p - x - alpha is reducible over the base field")]
    Reducible,
    #[error("field context is not of the expected kind: {0}")]
    WrongKind(&'static str),
    #[error("epsilon does not generate a normal basis over the prime field")]
    EpsilonNotNormal,
    #[error("b must be a nonzero element of the prime field")]
    ZeroB,
    #[error("normality check failed: {0}")]
    NormalityFailure(String),
    #[error("absolute degree {degree} exceeds the configured bound {bound}")]
    ScaleExceeded { degree: u128, bound: usize },
    #[error("{q} does not divide {p}^{l} - 1")]
    NotDividing { p: u32, q: u32, l: u32 },
    #[error("no element of multiplicative order {order} exists in the field")]
    NoSuchRoot { order: u64 },
    #[error("invalid b: it must be nonzero with b^(q^s) != xi")]
    BadB,
    #[error("construction identity failed: {0}")]
    ConstructionFailure(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed tower file: {0}")]
    Format(String),
}
