use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Coxeter matrix is not symmetric")]
    NonSymmetric,
    #[error("Coxeter matrix has a bad diagonal or off-diagonal entry")]
    BadDiagonal,
    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),
    #[error("unsupported scalar field: {0}")]
    UnsupportedField(String),
    #[error("polynomial belongs to a different variable set")]
    VariableMismatch,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("cannot parse braid word: {0}")]
    Parse(String),
    #[error("generator {0} out of range for rank {1}")]
    GeneratorOutOfRange(i64, usize),
    #[error("map is not graded: {0}")]
    NotGraded(String),
    #[error("Hilbert numerator fit unstable: {0}")]
    FitUnstable(String),
    #[error("tensor slot {0} out of range")]
    SlotOutOfRange(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bimodule map does not intertwine right actions: {0}")]
    IntertwiningViolated(String),
    #[error("realizations are incompatible: {0}")]
    IncompatibleRealization(String),
    #[error("complexes over different realizations")]
    RealizationMismatch,
    #[error("multi-complex is unbounded")]
    UnboundedComplex,
    #[error("Hecke algebra arithmetic not available for type {0}")]
    UnsupportedTypeForHecke(String),
    #[error("skein recursion budget exceeded")]
    RecursionBudgetExceeded,
    #[error("comparison window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
