use thiserror::Error;

/// Errors produced by polytope construction, parsing and the invariant
/// computations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("not a simple polytope: {0}")]
    NotSimple(String),
    #[error("not a polytope: {0}")]
    NotPolytopal(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not a medial graph: {0}")]
    NotMedial(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("torsion detected: {0}")]
    TorsionDetected(String),
    #[error("zero element")]
    ZeroElement,
    #[error("element is not in the belt-class span")]
    NotInBeltSpan,
    #[error("polytope has a face with an odd number of edges")]
    NotEvenPolytope,
    #[error("coloring search exhausted: {0}")]
    SearchExhausted(String),
    #[error("invalid characteristic map: {0}")]
    InvalidCharacteristic(String),
}

pub type Result<T> = std::result::Result<T, PolyError>;
