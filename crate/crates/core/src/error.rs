use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("edge `{0}` does not join an emerald and a violet node")]
    NotBipartite(String),
    #[error("rotation at `{0}` is not a permutation of its incident edges")]
    BadRotation(String),
    #[error("base edge is not incident to the base node")]
    BadBase,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has {0} edges, at most 128 are supported")]
    TooManyEdges(usize),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("not a hypertree: {0}")]
    NotHypertree(String),
    /// A run broke an invariant that the theory guarantees. Never expected on valid input.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
