use num_bigint::BigUint;
use thiserror::Error;

use crate::expr::SyntaxError;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// The input text could not be parsed.
    Syntax,
    /// The request is well formed but has no answer (no inverse, no root, ...).
    Domain,
    /// The request is outside what this library computes (composite base for a
    /// prime-only operation, p = 2 square roots, factorization limits).
    Capability,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeBase(BigUint),
    #[error("base must be an integer >= 2, got {0}")]
    InvalidBase(BigUint),
    #[error("precision must be at least 1")]
    InvalidPrecision,
    #[error("operands have different bases ({0} and {1})")]
    BaseMismatch(BigUint, BigUint),
    #[error("not invertible: unit part shares a factor with the base")]
    NotInvertible,
    #[error("operand is zero")]
    ZeroOperand,
    #[error("valuation unknown: value is zero modulo {base}^{bound}")]
    PrecisionLoss { base: BigUint, bound: i64 },
    #[error("at least two sequence terms are required, got depth {0}")]
    InsufficientDepth(usize),
    #[error("depth {depth} exceeds sequence length {len}")]
    DepthExceedsSequence { depth: usize, len: usize },
    #[error("no square root: unit part is a quadratic non-residue mod {0}")]
    NoSquareRoot(BigUint),
    #[error("no square root: valuation {0} is odd")]
    OddValuation(i64),
    #[error("square roots for p = 2 are not supported")]
    EvenPrimeUnsupported,
    #[error("{0} is a prime power and has no nontrivial idempotents")]
    NoNontrivialIdempotent(BigUint),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error(
        "cofactor {cofactor} has no prime factor below {bound} and could not be certified prime"
    )]
    FactorizationLimitExceeded { cofactor: BigUint, bound: u64 },
    #[error("{0} requires an exact rational operand")]
    InexactOperand(&'static str),
    #[error("{0}(...) does not produce a digit series and cannot be used as an operand")]
    NotANumber(&'static str),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Syntax(_) => ErrorCategory::Syntax,
            Error::NonPrimeBase(_)
            | Error::EvenPrimeUnsupported
            | Error::FactorizationLimitExceeded { .. } => ErrorCategory::Capability,
            _ => ErrorCategory::Domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
