use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("polytope is unbounded: facet normals do not positively span the space")]
    Unbounded,
    #[error("problem exceeds enumeration guards ({0})")]
    TooLarge(String),
    #[error("points lie in a proper affine subspace (affine dimension {affine_dim} < {dim})")]
    DegenerateDim { affine_dim: usize, dim: usize },
    #[error("section has empty relative interior")]
    EmptySection,
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("body has empty interior")]
    EmptyInterior,
    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("body is not in John's position: {0}")]
    NotInJohnPosition(String),
    #[error("no nonnegative decomposition of the identity (residual {residual:e})")]
    InfeasibleDecomposition { residual: f64 },
    #[error("zonotope has {count} generators, limit is {limit}")]
    TooManyGenerators { count: usize, limit: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("random body generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
