use thiserror::Error;

/// Errors produced by the kernel, the Bell-function machinery and the
/// degeneracy analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{qubits} qubits exceed the dense capacity of {max} qubits")]
    Capacity { qubits: usize, max: usize },

    #[error("invalid qubit count {0}")]
    InvalidQubitCount(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("not a unit Bloch vector (norm {0})")]
    NotUnitVector(f64),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("eigendecomposition failed to converge")]
    EigenFailure,

    #[error("invalid Bell configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate measurement direction: {0}")]
    DegenerateDirection(String),

    #[error("configuration does not saturate the Tsirelson bound (value {0})")]
    NotSaturating(f64),

    #[error("configuration is inconsistent with the saturation classification: {0}")]
    InconsistentConfiguration(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("phase-sum error: {0}")]
    PhaseSum(String),

    #[error("invalid symmetry label: {0}")]
    InvalidLabel(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
