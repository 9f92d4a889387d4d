use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unsupported field order {0} (orders up to 64 with a tabulated modulus)")]
    UnsupportedOrder(u64),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid edge ({u}, {v}) for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("coloring does not match graph: {0}")]
    ColoringMismatch(String),
    #[error("unsupported color count r = {0}: need r >= 3 with r - 1 a prime power")]
    UnsupportedR(usize),
    #[error("n = {n} is too small for r = {r}: need at least {need} vertices")]
    TooSmallN { n: usize, r: usize, need: usize },
    #[error("vertex count mismatch: expected {expected}, found {found}")]
    VertexCountMismatch { expected: usize, found: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("edge ({0}, {1}) lies inside a block of the multipartite graph")]
    EdgeInsideBlock(usize, usize),
    #[error("density precondition violated: e(H) = {edges} < {required}")]
    DensityPreconditionViolated { edges: u64, required: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("three-color minimum-degree verdict needs beta <= 1/25, got {0}")]
    Beta3ColorOutOfRange(String),
    #[error("minimum-degree verdict for r = {r} needs beta < 1/(r - 1), got {beta}")]
    BetaOutOfRange { r: usize, beta: String },
    #[error("brute force needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("graph has no edges")]
    NoEdges,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
