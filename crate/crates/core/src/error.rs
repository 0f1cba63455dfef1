use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptyPointSet,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("duplicate exponent {0:?}")]
    DuplicatePoint(Vec<i64>),

    #[error("affine span has dimension {affine_dim}, ambient dimension is {dim}")]
    DeficientSpan { affine_dim: usize, dim: usize },

    #[error("the integer span of the supports is a proper sublattice of Z^{dim}")]
    LatticeSpan { dim: usize },

    #[error("dimension {dim} is not supported by {operation} (maximum {max})")]
    UnsupportedDimension {
        operation: &'static str,
        dim: usize,
        max: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("coefficient of exponent {0:?} is zero")]
    ZeroCoefficient(Vec<i64>),

    #[error("coordinate {0} is not invertible")]
    NotInvertible(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyPointSet => "empty_point_set",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::DuplicatePoint(_) => "duplicate_point",
            Error::DeficientSpan { .. } => "deficient_span",
            Error::LatticeSpan { .. } => "lattice_span",
            Error::UnsupportedDimension { .. } => "unsupported_dimension",
            Error::Precondition(_) => "precondition",
            Error::ZeroCoefficient(_) => "zero_coefficient",
            Error::NotInvertible(_) => "not_invertible",
            Error::Parse(_) => "parse",
            Error::Json(_) => "json",
        }
    }
}
