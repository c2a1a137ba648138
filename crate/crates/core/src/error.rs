use thiserror::Error;

/// Errors raised by the samplers, codecs and solvers in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid forest: {0}")]
    InvalidForest(ForestViolation),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("component with {vertices} vertices and {edges} edges is disconnected")]
    Disconnected { vertices: usize, edges: usize },

    #[error("root bracket for nu not found after {0} expansions")]
    BracketNotFound(usize),

    #[error("{sampler} gave up after {attempts} attempts")]
    RejectionCapExceeded {
        sampler: &'static str,
        attempts: u64,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

/// Which rooted-forest invariant an input violates.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestViolation {
    #[error("root count t={t} must satisfy 1 <= t <= n={n}")]
    RootCount { n: usize, t: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("edge {{{0}, {1}}} closes a cycle")]
    Cycle(usize, usize),
    #[error("roots {0} and {1} share a tree")]
    RootsConnected(usize, usize),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
