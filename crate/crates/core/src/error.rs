use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),

    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotPresent(VertexId, VertexId),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid bipartition: {0}")]
    InvalidLabeling(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("invalid chimera spec: {0}")]
    InvalidSpec(String),

    #[error("fault out of range: {0}")]
    FaultOutOfRange(String),

    #[error("K_{k} exceeds the clique bound {max} for this hardware")]
    CliqueBound { k: usize, max: usize },

    #[error("partitions have unequal orders ({left} vs {right})")]
    UnequalPartitions { left: usize, right: usize },

    #[error("{what}: graph has {vertices} vertices, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        vertices: usize,
        budget: usize,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
