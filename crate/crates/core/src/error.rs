use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix data does not describe a square {dim}x{dim} matrix")]
    NotSquare { dim: usize },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },
    #[error("invalid modulus {0}: a prime >= 2 is required")]
    InvalidModulus(u64),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("cyclotomic index must be >= 1")]
    CyclotomicIndex,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unknown generator letter `{0}`")]
    UnknownLetter(String),
    #[error("letter `{0}` has no Prym image")]
    NoPrymImage(String),
    #[error("invalid genus {genus}: {reason}")]
    InvalidGenus { genus: usize, reason: &'static str },
    #[error("budget exceeded: {what} needs more than {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("generating set is not closed under inverses")]
    NotSymmetric,
    #[error("generating set is not admissible: {}", .0.join("; "))]
    NotAdmissible(Vec<String>),
    #[error("generating set is empty")]
    EmptySet,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid form: {0}")]
    InvalidForm(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
