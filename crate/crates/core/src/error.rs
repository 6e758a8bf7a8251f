use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {0} is not a power of two")]
    NotQubitRegister(usize),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("invalid qubit set: {0}")]
    InvalidQubits(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("infeasible mean spin: {0}")]
    Infeasible(String),

    #[error("degenerate direction: {0}")]
    Degenerate(String),

    #[error("criterion not applicable: {0}")]
    Inapplicable(String),

    #[error("correlation matrix off-diagonal entries are unknown")]
    MissingCorrelations,

    /// Malformed input file; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("criterion still detects entanglement at t_max = {t_max}; raise t_max")]
    BracketExceeded { t_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
