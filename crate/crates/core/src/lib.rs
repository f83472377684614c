//! Bottleneck assignment solving and perturbation robustness analysis.
//!
//! The bottleneck assignment problem asks for a matching that covers every
//! agent while minimizing the largest edge weight used. This crate solves
//! it and, more importantly, quantifies how far the edge weights can move
//! before the returned bottleneck edge stops being optimal:
//!
//! * [`bap::solve`] finds the optimal value, a witness matching, and the
//!   full bottleneck edge set;
//! * [`robustness`] computes certified per-edge perturbation intervals by
//!   three methods of increasing looseness and decreasing cost;
//! * [`oracle`] provides exhaustive-enumeration ground truth and seeded
//!   Monte-Carlo certification used to validate every bound.

pub mod bap;
pub mod error;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod robustness;

pub use bap::{solve, solve_reference, BottleneckSolution};
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, EdgeId, ReducedGraph};
pub use matching::{has_maximal_matching, maximum_matching, Matching};
pub use robustness::{
    critical_edges, min_finite_magnitude, naive_bounds, relaxed_bounds, theorem1_bounds,
    theorem1_delta, BoundsMethod, CriticalEdge, CriticalEdges, PerturbationInterval,
    RobustnessBounds,
};
