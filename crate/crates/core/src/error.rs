use thiserror::Error;

/// Errors raised by the arithmetic layers and the verifiers built on them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not prime: {0}")]
    NotPrime(u64),

    #[error("bad degree: {0}")]
    BadDegree(u32),

    #[error("field order {p}^{e} exceeds the supported budget (q < 2^32)")]
    FieldTooLarge { p: u32, e: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch")]
    FieldMismatch,

    #[error("invalid field element: {0}")]
    InvalidElement(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("nonpolynomial Laurent part (lowest exponent {0})")]
    NonpolynomialLaurent(i64),

    #[error("cancellation violated at X^{m} Y^{n} (lowest T exponent {lowest})")]
    CancellationViolated { m: u32, n: u32, lowest: i64 },

    #[error("no embedding from GF({p}^{from}) into GF({p}^{to})")]
    NoEmbedding { p: u32, from: u32, to: u32 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("index out of congruence range: i = {i}, q = {q}")]
    IndexOutOfCongruenceRange { i: u64, q: u64 },

    #[error("exponent out of range: e = {0}, need e >= 2")]
    ExponentOutOfRange(i64),

    #[error("coefficient index out of range: m = {m}, q = {q}")]
    CoefficientOutOfRange { m: u32, q: u32 },

    #[error("oracle degenerate at T = {alpha} after {attempts} attempts")]
    OracleDegenerate { alpha: String, attempts: u32 },

    #[error("extension degree too small: q^k = {0} < 2^16")]
    ExtensionTooSmall(u64),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
