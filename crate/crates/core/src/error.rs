use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Fibonacci indices start at 1")]
    ZeroIndex,

    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),

    #[error("base must be at least 2, got {0}")]
    Base(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} exceeds the supported bound {cap}")]
    PrimeTooLarge { p: u64, cap: u64 },

    #[error("the p-adic valuation of 0 is undefined")]
    ZeroValuation,

    #[error("digit {digit} at position {position} is out of range (limit {limit})")]
    DigitOutOfRange { position: usize, digit: u64, limit: u64 },

    #[error("the carry rule needs an odd prime, got p = {0}")]
    EvenPrime(u64),

    #[error("{p}* = {p_star} < {p}: the conjecture's hypothesis p* >= p fails; use the counterexample search instead")]
    HypothesisUnmet { p: u64, p_star: u64 },

    #[error("{p}* = {p_star} >= {p}: no counterexample is guaranteed for this prime")]
    NoGuaranteedCounterexample { p: u64, p_star: u64 },

    #[error("n = {n} exceeds the exact-arithmetic cap {cap}")]
    CapExceeded { n: u64, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("carry rule and oracle disagree at (n = {n}, k = {k}): carry {carry}, oracle {oracle}")]
    OracleMismatch { n: u64, k: u64, carry: u64, oracle: u64 },

    #[error("identity failed: {0}")]
    IdentityFailed(String),
}
