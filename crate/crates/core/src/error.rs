use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("invalid isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("canonical search exceeded its node limit")]
    SearchLimit,
    #[error("malformed move: {0}")]
    MalformedMove(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("uncertified disk: {0}")]
    Uncertified(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("geometry: {0}")]
    Geometry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
