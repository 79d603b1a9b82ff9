use thiserror::Error;

/// Failures raised by the geometric constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("edge lengths are not embeddable in Euclidean space (vertex subset {subset:?})")]
    NotEmbeddable { subset: Vec<usize> },

    #[error("degenerate simplex: vertex subset {subset:?} has zero volume")]
    Degenerate { subset: Vec<usize> },

    #[error("point lies at infinity (barycentric coordinates sum to zero)")]
    PointAtInfinity,

    #[error("point lies on the sideplane opposite vertex {index}")]
    OnSideplane { index: usize },

    #[error("hyperplane coefficients are all equal (hyperplane at infinity)")]
    HyperplaneAtInfinity,

    #[error("coordinate {index} is zero")]
    ZeroCoordinate { index: usize },

    #[error("point coincides with vertex {index}")]
    AtVertex { index: usize },

    #[error("inversion center coincides with vertex {index}")]
    CenterAtVertex { index: usize },

    #[error("antipedal simplex is unbounded: hyperplanes meeting at vertex {index} are dependent")]
    UnboundedAntipedal { index: usize },

    #[error("line through vertex {index} and the point is parallel to the opposite facet")]
    ParallelLine { index: usize },

    #[error("side lengths ({0}, {1}, {2}) do not form a triangle")]
    NotATriangle(f64, f64, f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
