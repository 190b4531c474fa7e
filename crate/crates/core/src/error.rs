use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DunklError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("multiplicity is not constant on the orbit of {orbit}: {detail}")]
    NonInvariantMultiplicity { orbit: String, detail: String },
    #[error("polynomial is not divisible by the linear form {0}")]
    NotDivisible(String),
    #[error("singular intertwining system in degree {degree} (rank {rank} < {unknowns})")]
    Singular { degree: usize, rank: usize, unknowns: usize },
    #[error("inconsistent intertwining system in degree {degree}: residual {residual}")]
    Inconsistent { degree: usize, residual: String },
    #[error("degree {degree} exceeds the table cap {cap}; extend the table first")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("truncation radius exceeded: |x||y| = {product:.4} > {radius:.4} for M = {truncation}; use M >= {suggested}")]
    Truncation {
        product: f64,
        radius: f64,
        truncation: usize,
        suggested: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("non-finite value at quadrature node {index}: {detail}")]
    NonFinite { index: usize, detail: String },
    #[error("zero squared norm for basis element {0}")]
    ZeroNorm(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl DunklError {
    /// Short code naming the module the error originated from.
    pub fn origin(&self) -> &'static str {
        match self {
            DunklError::Config(_) | DunklError::Parse(_) => "config",
            DunklError::DimensionMismatch { .. } | DunklError::NotDivisible(_) => "polynomial",
            DunklError::GroupTooLarge { .. } | DunklError::NonInvariantMultiplicity { .. } => {
                "root_system"
            }
            DunklError::Singular { .. }
            | DunklError::Inconsistent { .. }
            | DunklError::DegreeOverflow { .. } => "intertwiner",
            DunklError::Truncation { .. } => "kernel",
            DunklError::NonFinite { .. } => "quadrature",
            DunklError::ZeroNorm(_) => "hermite",
            DunklError::Unsupported(_) | DunklError::Numerical(_) => "numerics",
        }
    }

    pub fn is_config(&self) -> bool {
        matches!(self, DunklError::Config(_) | DunklError::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, DunklError>;
