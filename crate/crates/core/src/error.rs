use thiserror::Error;

/// Errors raised by the semigroup, resolution and graded-algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no generators given")]
    EmptyGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("gcd of the generators is {0}, not 1")]
    GcdNotOne(u64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("expected {expected} exponents, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix built for multiplicity {expected} applied to a semigroup of multiplicity {got}")]
    MultiplicityMismatch { expected: usize, got: usize },
    #[error("entry at row {row}, column {col} is not homogeneous: {detail}")]
    FaceMismatch {
        row: usize,
        col: usize,
        detail: String,
    },
    #[error("multiplicity is {0}, expected 4")]
    NotMultiplicityFour(usize),
    #[error("semigroup lies in the {found} face, construction needs {expected}")]
    WrongFace {
        expected: &'static str,
        found: &'static str,
    },
    #[error("face signature {0} does not match any face of C_4 containing semigroups")]
    UnclassifiedFace(String),
    #[error("reduction failed: {0}")]
    ReductionFailure(String),
    #[error("no source for the Betti series of the defining ideal")]
    MissingPiq,
    #[error("a minimal generator appeared at degree {degree}, the bound is {bound}")]
    DegreeBoundTooLow { degree: u64, bound: u64 },
    #[error("the zero polynomial has no initial form")]
    ZeroPolynomial,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
