use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = SprError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum SprError {
    #[error("edge ({u}, {v}) has non-positive weight {w}")]
    NonPositiveWeight { u: VertexId, v: VertexId, w: f64 },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge endpoint {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: VertexId, vertex_count: usize },
    #[error("terminal {terminal} listed more than once")]
    DuplicateTerminal { terminal: VertexId },
    #[error("terminal {terminal} out of range for {vertex_count} vertices")]
    TerminalOutOfRange { terminal: VertexId, vertex_count: usize },
    #[error("graph is disconnected: vertex {unreachable} unreachable from vertex 0")]
    DisconnectedGraph { unreachable: VertexId },
    #[error("at least one terminal is required")]
    NoTerminals,
    #[error("operation needs at least two terminals, got {0}")]
    FewerThanTwoTerminals(usize),
    #[error("probability must lie in (0, 1), got {0}")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("single-crossing minor requires per-vertex in-cluster distances")]
    MissingClusterDistances,
    #[error("extraction record missing for vertex {0}")]
    IncompleteRecords(VertexId),
    #[error("graph has no Steiner vertices; normalization is vacuous")]
    NoSteinerVertices,
    #[error("invalid terminal partition: {0}")]
    InvalidPartition(#[from] crate::partition::PartitionViolation),
    #[error("ball growing did not finish within {rounds} rounds ({unclustered} vertices unclustered)")]
    NonTermination { rounds: usize, unclustered: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl SprError {
    /// Process exit code used by the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            SprError::Io(_) => 3,
            _ => 2,
        }
    }
}
