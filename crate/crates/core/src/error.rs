use thiserror::Error;

use crate::graph::EdgeId;

/// Errors produced by graph construction, solving, and certification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cost matrix has no present entries")]
    EmptyMatrix,

    #[error("cost matrix row {row} has a different length than row 0")]
    RaggedMatrix { row: usize },

    #[error("weight at ({row}, {col}) is not finite: {value}")]
    NonFiniteWeight { row: usize, col: usize, value: f64 },

    #[error("edge {edge} is out of bounds for a {num_agents}x{num_tasks} graph")]
    InvalidEdge {
        edge: EdgeId,
        num_agents: usize,
        num_tasks: usize,
    },

    #[error("duplicate edge {edge}")]
    DuplicateEdge { edge: EdgeId },

    #[error("edge {edge} does not exist in the graph")]
    EdgeNotFound { edge: EdgeId },

    #[error("infeasible: no assignment covers every agent")]
    Infeasible,

    #[error("graph has {num_agents} agents; exhaustive enumeration is capped at {limit}")]
    TooLarge { num_agents: usize, limit: usize },

    #[error("perturbation domain does not match the graph's edge set")]
    DomainMismatch,

    #[error("perturbation for edge {edge} is not finite: {value}")]
    NonFiniteDelta { edge: EdgeId, value: f64 },

    #[error("{0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
