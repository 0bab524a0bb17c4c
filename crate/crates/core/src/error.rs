use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("input is empty")]
    Empty,
    #[error("object is not full-dimensional (rank {rank} in dimension {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("cone is not pointed")]
    NotPointed,
    #[error("generator {0} is not extreme")]
    NotExtreme(usize),
    #[error("zero vector where a nonzero direction is required")]
    ZeroVector,
    #[error("origin is not in the interior; translate the polytope first")]
    OriginNotInterior,
    #[error("point is not in the interior of the polytope")]
    PointNotInterior,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("simplex is degenerate")]
    DegenerateSimplex,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("linear form vanishes on every facet normal at a recursion node")]
    DegenerateLinearForm,
    #[error("hyperplane arrangement is not simple")]
    NotSimple,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
