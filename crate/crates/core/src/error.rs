use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is out of range (must be below 2^31)")]
    CharTooLarge(u64),
    #[error("the zero polynomial is not a valid input here")]
    ZeroPolynomial,
    #[error("a constant polynomial is not a valid input here")]
    ConstantPolynomial,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("polynomial must be monic in x")]
    NotMonic,
    #[error("degree out of range: expected {expected}, got {got}")]
    WrongDegree { expected: &'static str, got: i64 },
    #[error("inseparable polynomial (zero discriminant)")]
    Inseparable,
    #[error("radicand is a square: not a quadratic extension")]
    SquareRadicand,
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error(
        "invariant {n} is divisible by p = {p}: p-power parts are realized by the \
         principal-unit tower at the infinite place, not by finite moduli"
    )]
    PGroupInvariant { n: u64, p: u64 },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("search budget exhausted after {tried} candidates ({detail})")]
    BudgetExhausted { tried: u64, detail: String },
    #[error("gcd(q, 2n) must be 1 (q = {q}, n = {n})")]
    NotCoprime { q: u128, n: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("the trivial group has no ramification bound")]
    TrivialGroup,
    #[error("no p-quotient data supplied for p = {p}")]
    MissingGroupData { p: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}
