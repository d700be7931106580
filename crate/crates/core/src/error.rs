use thiserror::Error;

/// Errors raised by the library. Verification failures that are part of a
/// report (violations, mismatches) are returned in-band and never use this
/// type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("singular")]
    Singular,

    #[error("not_cospherical: the points do not lie on a common ellipsoid")]
    NotCospherical,

    #[error("form is not positive definite")]
    NotPositiveDefinite,

    #[error("unsupported rank {0}: only ranks 1 through 4 are handled")]
    UnsupportedRank(usize),

    #[error("certification failed after enlarging the search box to radius {radius}")]
    CertificationFailed { radius: i64 },

    #[error("the origin is not a vertex of the cell")]
    OriginNotVertex,

    #[error("cell is not full dimensional (dimension {dim}, ambient rank {rank})")]
    NotFullDimensional { dim: usize, rank: usize },

    #[error("rays are linearly dependent")]
    DependentRays,

    #[error("pieces do not refine the cell: {0}")]
    NotARefinement(String),

    #[error("unknown cone `{0}`")]
    UnknownCone(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("form is not in the linear span of the chamber generators")]
    NotInSpan,

    #[error("invalid index split `{0}`")]
    InvalidSplit(String),

    #[error("fusion check failed: {0}")]
    Fusion(String),

    #[error("group closure exceeded {0} elements")]
    GroupClosure(usize),

    #[error("consistency check failed: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
