use thiserror::Error;

use crate::network::NodeId;

/// Errors raised by the design and evaluation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no path from node {src} to node {dst}")]
    Unreachable { src: NodeId, dst: NodeId },

    #[error("more than {cap} shortest paths exist")]
    CapExceeded { cap: usize },

    #[error("node {0} is not reachable in the tree")]
    NotInTree(NodeId),

    #[error("demand {0} cannot be routed within its bounds")]
    InfeasibleDemand(usize),

    #[error("LARAC did not converge within {0} iterations")]
    LaracNoConvergence(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("node `{0}` has no coordinates")]
    MissingCoordinates(String),

    #[error("link `{0}` has no capacity")]
    MissingCapacity(String),

    #[error("loss constant {kappa} gives a loss probability >= 1 on arc {arc}")]
    InvalidKappa { kappa: f64, arc: usize },

    #[error("generated graph is disconnected; try another seed or a higher density")]
    Disconnected,

    #[error("topology budget {budget} is below the heuristic topology count {hint}")]
    BudgetTooSmall { budget: usize, hint: usize },

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
