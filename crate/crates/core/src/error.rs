use thiserror::Error;

/// Errors raised by graph construction, model building and the algebra on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` has an open end")]
    OpenEdge(String),
    #[error("cells belong to different graphs")]
    MismatchedGraph,
    #[error("cells have different numbers of points ({0} vs {1})")]
    MismatchedK(usize, usize),
    #[error("morphisms are not composable")]
    NonComposable,
    #[error("permutation has degree {got}, expected {expected}")]
    WrongDegree { expected: usize, got: usize },
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("complex has no cells")]
    EmptyComplex,
    #[error("group action is not free: {0}")]
    NonFreeAction(String),
    #[error("boundary maps do not compose to zero in dimension {0}")]
    NotAComplex(usize),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("complex has dimension {0}, expected at most 1")]
    NotOneDimensional(usize),
    #[error("graph has a leaf at vertex `{0}`")]
    HasLeaves(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
