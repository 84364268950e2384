use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("qubit {0} used more than once in a gate")]
    DuplicateQubit(usize),
    #[error("non-finite gate angle")]
    NonFiniteAngle,
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("insufficient ancillae: need {needed} {kind}, have {available}")]
    InsufficientAncillae {
        kind: &'static str,
        needed: usize,
        available: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("schema error{}: {msg}", .index.map(|i| format!(" at gate {i}")).unwrap_or_default())]
    Schema { index: Option<usize>, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("postselection has zero probability")]
    ZeroProbability,
    #[error("{qubits} qubits exceeds the simulation cap of {cap}")]
    TooManyQubits { qubits: usize, cap: usize },
    #[error("completion residual {0:e} above tolerance")]
    CompletionResidual(f64),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("error budget {0:e} is too small for double precision")]
    BudgetInfeasible(f64),
    #[error("encoding is not symmetric")]
    NotSymmetric,
}

pub type Result<T> = std::result::Result<T, Error>;
