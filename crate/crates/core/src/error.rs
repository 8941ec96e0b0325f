use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop detected: element {element} has rank 0")]
    LoopDetected { element: usize },

    #[error("circuit axiom violated ({axiom}) by circuits {first:?} and {second:?}")]
    CircuitAxiomViolation {
        axiom: &'static str,
        first: Vec<usize>,
        second: Vec<usize>,
    },

    #[error("invalid matroid input: {0}")]
    InvalidInput(String),

    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("{elements:?} is not a flat")]
    NotAFlat { elements: Vec<usize> },

    #[error("fan is not pure: maximal cones have dimensions {dimensions:?}")]
    NotPure { dimensions: Vec<usize> },

    #[error("cone {index} has linearly dependent rays; triangulate it first")]
    NonSimplicialCone { index: usize },

    #[error("instance size {size} exceeds the oracle limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
}
