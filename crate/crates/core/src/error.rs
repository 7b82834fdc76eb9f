use thiserror::Error;

/// Errors raised by the library. Variants name the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("operator has no essential spectrum (finite-trace ambient)")]
    NoEssentialSpectrum,
    #[error("trace is indeterminate (infinite positive and negative mass)")]
    IndeterminateTrace,
    #[error("infinite weight multiplied by zero")]
    InfiniteTimesZero,
    #[error("flags cannot be aligned: {0}")]
    FlagMismatch(String),
    #[error("operator must be tau-compact")]
    RequiresCompact,
    #[error("inputs must be positive")]
    RequiresPositive,
    #[error("invalid pad: {0}")]
    InvalidPad(String),
    #[error("index {k} out of range (total multiplicity {total})")]
    OutOfRange { k: u64, total: u64 },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("inputs are not majorized")]
    NotMajorized,
    #[error("inputs are not submajorized")]
    NotSubmajorized,
    #[error("trace-class input required")]
    NotTraceClass,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("matrix is not {0}")]
    InvalidMatrix(String),
    #[error("eigensolver did not converge after {0} sweeps")]
    EigenFailure(usize),
    #[error("birkhoff decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("fallback exhausted: {0}")]
    FallbackExhausted(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// The innermost error, skipping stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
