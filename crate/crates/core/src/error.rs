use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge {edge} out of range (graph has {count} edges)")]
    EdgeOutOfRange { edge: usize, count: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("instance has {edges} edges, exact solver limit is {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected: {uncolored} edges unreachable from the start vertex")]
    Disconnected { uncolored: usize },
    #[error("move is no longer applicable")]
    StaleMove,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
