use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {0} is not a leaf label of the tree")]
    UnknownLabel(usize),
    #[error("label {0} already present in the tree")]
    DuplicateLabel(usize),
    #[error("node {0} does not exist in the tree")]
    UnknownNode(usize),
    #[error("{0}-{1} is not an edge of the tree")]
    NotAnEdge(usize, usize),
    #[error("edge {0}-{1} touches a labeled leaf")]
    PendantContraction(usize, usize),
    #[error("operation would leave the tree empty")]
    EmptyTree,
    #[error("leaf labels do not form the range 0..{0}")]
    NonContiguousLabels(usize),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("tree labels do not match the graph's vertex set")]
    LabelMismatch,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate pattern name {0:?}")]
    DuplicatePattern(String),
    #[error("patterns {0:?} and {1:?} are isomorphic")]
    IsomorphicPatterns(String, String),
    #[error("invalid pattern {name:?}: {msg}")]
    InvalidPattern { name: String, msg: String },

    #[error("graph is not a {0}-leaf power")]
    NotLeafPower(usize),
    #[error("graph has no leaf")]
    NoLeaf,
    #[error("k = {0} is outside the supported range")]
    BadK(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search gave up: {0}")]
    Inconclusive(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("graph too large: {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },
}
