use core::fmt;

/// Why a candidate `d` does not define a real quadratic field we handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDefect {
    /// `d < 2`.
    TooSmall,
    /// `factor² | d`.
    SquareFactor(u64),
    /// Above [`crate::quad::MAX_D`].
    TooLarge,
}

impl fmt::Display for FieldDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDefect::TooSmall => f.write_str("d must be at least 2"),
            FieldDefect::SquareFactor(p) => write!(f, "not square-free: {p}² divides d"),
            FieldDefect::TooLarge => write!(f, "d exceeds {}", crate::quad::MAX_D),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    InvalidDenominator,
    #[error("values live in different fields: Q(√{0}) and Q(√{1})")]
    FieldMismatch(u64, u64),
    #[error("b = 0: the number is rational")]
    NotIrrational,
    #[error("(a={a}, c={c}) is not an admissible candidate for d={d}")]
    InvalidCandidate { d: u64, a: u64, c: u64 },
    #[error("d={d}: {defect}")]
    InvalidField { d: u64, defect: FieldDefect },
    #[error("oracle search for d={0} exceeds the cost guard (d ≤ {max})", max = crate::oracle::ORACLE_MAX_D)]
    OracleTooLarge(u64),
    #[error("modulus {0} must be odd and positive")]
    InvalidModulus(u64),
    #[error("d={0} does not satisfy the non-residue hypothesis")]
    NotExceptional(u64),
    #[error("no exceptional decomposition found for d={0}")]
    DecompositionFailed(u64),
    #[error("{d} is not a square modulo {modulus}")]
    NotAResidue { d: i64, modulus: u64 },
    #[error("prime {p} divides d={d}")]
    RamifiedPrime { d: i64, p: u64 },
    #[error("parameter outside its admissible range: {0}")]
    OutOfRange(&'static str),
    #[error("exact arithmetic overflowed 128-bit range")]
    Overflow,
    #[error("internal bound check failed for d={0}")]
    BoundViolated(u64),
}

pub type Result<T> = core::result::Result<T, Error>;
