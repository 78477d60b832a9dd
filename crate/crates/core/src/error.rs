use thiserror::Error;

/// Errors raised by the exact-arithmetic kernels and the experiment drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degenerate map: all components vanish")]
    DegenerateMap,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sequence too short: need at least {needed}, got {got}")]
    SequenceTooShort { needed: usize, got: usize },
    #[error("empty generator set")]
    EmptyGeneratorSet,
    #[error("class is not on the positive hyperboloid sheet")]
    NotOnHyperboloid,
    #[error("class is not isotropic")]
    NotIsotropic,
    #[error("negative multiplicity on label {0}")]
    NegativeMultiplicity(String),
    #[error("matrix does not preserve the intersection form")]
    NotAnIsometry,
    #[error("witness verification failed: {0}")]
    VerificationFailed(String),
    #[error("digit expansion did not terminate within {0} steps")]
    ExpansionFailed(usize),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
