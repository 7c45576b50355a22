use thiserror::Error;

/// Errors produced by witness construction and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Pauli symbol '{0}' (expected one of I, X, Y, Z)")]
    InvalidPauliSymbol(char),

    #[error("empty Pauli string")]
    EmptyPauliString,

    #[error("qubit count {requested} exceeds the configured maximum of {max}")]
    QubitLimit { requested: usize, max: usize },

    #[error("dimension mismatch: {context} (expected {expected}, got {actual})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("state vector is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian: max |M - M^H| = {0:.3e}")]
    NotHermitian(f64),

    #[error("matrix trace deviates from 1 by {0:.3e}")]
    BadTrace(f64),

    #[error("matrix is not positive semidefinite: min eigenvalue = {0:.3e}")]
    NotPositiveSemidefinite(f64),

    #[error("matrix is not unitary: max |U U^H - I| = {0:.3e}")]
    NotUnitary(f64),

    #[error("expectation value outside [-1, 1]: {0}")]
    ExpectationOutOfRange(f64),

    #[error("expectation value has non-negligible imaginary part: {0:.3e}")]
    ComplexExpectation(f64),

    #[error("mixing probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("qubit indices ({a}, {b}) invalid for {n} qubits (need 1 <= a < b <= n)")]
    InvalidQubitPair { a: usize, b: usize, n: usize },

    #[error("empty feature set")]
    EmptyFeatureSet,

    #[error("feature sets do not align: {0}")]
    FeatureSetMismatch(String),

    #[error("Dirichlet concentration must be positive, got {0}")]
    InvalidAlpha(f64),

    #[error("invalid target state kind '{0}'")]
    InvalidTargetKind(String),

    #[error("training data contains a single class only")]
    SingleClassData,

    #[error("training diverged: {0}")]
    TrainingDiverged(String),

    #[error("no partition catalog available for {0} qubits")]
    UnsupportedCatalog(usize),

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("parameter shape mismatch: {0}")]
    ParameterShape(String),

    #[error("all optimizer restarts diverged")]
    OptimizerDiverged,

    #[error("witness has zero identity coefficient; cannot normalize")]
    ZeroIdentityCoefficient,

    #[error("normalization would require a non-positive scale factor")]
    NegativeScale,

    #[error("witnesses must be normalized to the same identity coefficient before comparison")]
    UnnormalizedComparison,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("recursive feature elimination failed: {0}")]
    RfeFailed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
