use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(
        "entry ({row}, {col}) is a unit with non-constant terms; \
         use a quasi-homogeneous model of the singularity"
    )]
    NonConstantUnit { row: usize, col: usize },
    #[error("no two-periodic stabilization found within {0} steps")]
    NoStabilization(usize),
    #[error("not a matrix factorization: {product} entry ({row}, {col}) differs from f times identity")]
    NotAFactorization {
        product: &'static str,
        row: usize,
        col: usize,
    },
    #[error("variable `{0}` already exists in the ring")]
    VariableClash(String),
    #[error("matrix identity failed: {0}")]
    IdentityFailed(String),
    #[error("sequence is not exact at spot {spot}: {detail}")]
    ExactnessFailed { spot: usize, detail: String },
    #[error("composite of consecutive maps is nonzero")]
    CompositeNonzero,
    #[error("map is not well defined on the presented modules")]
    IllDefinedMap,
    #[error("homology has infinite length or is supported away from the origin ({0})")]
    NotFiniteLength(String),
    #[error("stable Tor lengths do not repeat with period two: {0}")]
    PeriodicityCheckFailed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vanishing conformance violated: {0}")]
    ConformanceViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for failures of the mathematical hypotheses (as opposed to bad input).
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotFiniteLength(_) | Error::NoStabilization(_) | Error::PeriodicityCheckFailed(_)
        )
    }
}
