use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimension {0} is not supported (expected 2, 4 or 8)")]
    UnsupportedDimension(usize),
    #[error("tensor product of dimensions {0} and {1} exceeds 8")]
    DimensionOverflow(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry count {got} does not match dimension {dim} (expected {expected})")]
    EntryCount {
        dim: usize,
        got: usize,
        expected: usize,
    },
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("trace {0} differs from 1")]
    BadTrace(f64),
    #[error("negative eigenvalue {0:.3e} beyond clamp tolerance")]
    NegativeEigenvalue(f64),
    #[error("Jacobi sweeps did not converge (off-diagonal residual {0:.3e})")]
    NoConvergence(f64),
    #[error("invalid party selection: {0}")]
    InvalidPartySet(String),
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("non-finite parameter {0}")]
    NonFinite(f64),
    #[error("parameter {name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("amplitudes cannot be normalized (norm {0})")]
    NotNormalizable(f64),
    #[error("unknown state name `{0}`")]
    UnknownState(String),
    #[error("GHZ-class sampler rejected {0} consecutive draws")]
    TooManyRejections(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
