use thiserror::Error;

use crate::parse::ParseError;
use crate::poly::Polynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),

    #[error("variable index {index} out of range for {arity} variables")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("division by the zero polynomial")]
    ZeroModulus,

    #[error("gcd(0, 0) is undefined")]
    BothZero,

    #[error("linear change of coordinates is singular")]
    SingularChange,

    #[error("input polynomial is constant")]
    ConstantInput,

    /// `gcd(P, ∂P)` is non-constant for a generic direction: `witness` is a
    /// repeated factor (in the caller's coordinates).
    #[error("polynomial is not reduced; repeated factor divides {witness}")]
    NotReduced { witness: Polynomial },

    #[error("polynomial is not generic in variable {0}")]
    NotGeneric(usize),

    #[error("variable {0} does not occur in the polynomial")]
    VariableAbsent(usize),

    #[error("Groebner basis computation exceeded degree cap {0}")]
    DegreeCapExceeded(u32),

    #[error("quotient space has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("endomorphism column {0} is not in the span of the image basis")]
    UnsolvableColumn(usize),

    #[error("characteristic polynomial never squarefree after {attempts} attempts (seed {seed}, last {char_poly})")]
    RetriesExhausted {
        attempts: usize,
        seed: u64,
        char_poly: String,
    },

    #[error("factorization certificate failed: {0}")]
    CertificateFailure(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("internal error: {0}")]
    Internal(String),
}
