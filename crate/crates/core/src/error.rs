use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    ParseScalar(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("frame points are not in general position")]
    FrameDegenerate,
    #[error("{len} points exceed the exhaustive enumeration cap of {cap}")]
    TooLarge { len: usize, cap: usize },
    #[error("configuration has {len} points, expected r*g = {expected}")]
    SizeMismatch { len: usize, expected: String },
    #[error("configuration does not span its ambient space")]
    Degenerate,
    #[error("kernel basis has a zero row at point {0}; Gale transform undefined")]
    RowElimination(usize),
    #[error("no member of the quartic pencil is singular along the matching lines")]
    PencilSearchFailed,
    #[error("point is singular on the hypersurface; polar map undefined")]
    SingularPoint,
    #[error("point does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error("point does not lie on the hyperplane sum(x) = 0")]
    OffHyperplane,
    #[error("matrix is singular")]
    SingularMatrix,
}
