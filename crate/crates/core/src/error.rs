use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Error, Debug)]
pub enum Error {
    #[error("vertex index {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("set {0:?}... is not a clique of the graph")]
    NotAClique(Vec<usize>),

    #[error("eigensolver did not converge after {iters} iterations (residual {residual:.3e})")]
    EigenNoConverge { iters: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
