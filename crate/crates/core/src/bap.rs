//! Bottleneck assignment: minimize the largest weight used by a matching
//! that covers every agent.
//!
//! [`solve`] is the production path: a binary search over the sorted
//! distinct weights, each probe being one feasibility check on the
//! thresholded subgraph. [`solve_reference`] is the literal threshold
//! loop that deletes the heaviest edge while an agent-covering matching
//! survives; it exists for differential testing and must agree with
//! [`solve`] exactly.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId};
use crate::matching::{maximum_matching, Matching};

/// Optimal bottleneck value together with a witness matching and the set
/// of edges that attain the value in at least one optimal matching.
#[derive(Debug, Clone, PartialEq)]
pub struct BottleneckSolution {
    /// Smallest achievable maximum weight over agent-covering matchings.
    pub value: f64,
    /// An agent-covering matching whose largest weight equals `value`.
    pub witness: Matching,
    /// Every edge of weight `value` that attains the maximum in some
    /// optimal agent-covering matching. Non-empty.
    pub bottleneck_edges: BTreeSet<EdgeId>,
}

/// Solves the bottleneck assignment problem on `g`.
///
/// Errors with [`Error::Infeasible`] when no matching covers every agent
/// (including the degenerate zero-agent graph, which has no bottleneck
/// edge to report).
pub fn solve(g: &BipartiteGraph) -> Result<BottleneckSolution> {
    let n = g.num_agents();
    if n == 0 || maximum_matching(g).len() < n {
        return Err(Error::Infeasible);
    }

    let weights = g.distinct_weights();
    // Find the smallest threshold whose subgraph still covers all agents.
    // The top threshold is feasible because the full graph is.
    let (mut lo, mut hi) = (0usize, weights.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible_at(g, weights[mid], n) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let value = weights[lo];

    finish(g, value, n)
}

/// Threshold-deletion solver: repeatedly delete the heaviest edge while an
/// agent-covering matching survives; the last deleted edge carries the
/// bottleneck value. Ties on weight are deleted in descending
/// (agent, task) order so runs are reproducible.
pub fn solve_reference(g: &BipartiteGraph) -> Result<BottleneckSolution> {
    let n = g.num_agents();
    if n == 0 || maximum_matching(g).len() < n {
        return Err(Error::Infeasible);
    }

    let mut order: Vec<(EdgeId, f64)> = g.edges().collect();
    order.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .expect("weights are finite")
            .then(a.0.cmp(&b.0))
    });

    let mut current = g.clone();
    let mut last_removed = None;
    while maximum_matching(&current).len() >= n {
        let (e, w) = order.pop().expect("a covering matching implies edges remain");
        current = current.remove_edge(e).expect("edge is still present");
        last_removed = Some(w);
    }
    let value = last_removed.expect("initial feasibility was checked");

    finish(g, value, n)
}

fn finish(g: &BipartiteGraph, value: f64, n: usize) -> Result<BottleneckSolution> {
    let witness = maximum_matching(&g.filter_edges(|_, w| w <= value));
    debug_assert_eq!(witness.len(), n);
    let bottleneck_edges = bottleneck_edge_set(g, value, n);
    debug_assert!(!bottleneck_edges.is_empty());
    Ok(BottleneckSolution {
        value,
        witness,
        bottleneck_edges,
    })
}

fn feasible_at(g: &BipartiteGraph, threshold: f64, n: usize) -> bool {
    maximum_matching(&g.filter_edges(|_, w| w <= threshold)).len() >= n
}

/// Edges of weight exactly `value` that can head an optimal matching:
/// forcing the edge and covering the remaining agents with weights
/// `<= value` must stay feasible.
fn bottleneck_edge_set(g: &BipartiteGraph, value: f64, n: usize) -> BTreeSet<EdgeId> {
    g.edges()
        .filter(|&(_, w)| w == value)
        .filter(|&(e, _)| {
            let rest = g.filter_edges(|x, w| {
                w <= value && x.agent != e.agent && x.task != e.task
            });
            maximum_matching(&rest).len() >= n - 1
        })
        .map(|(e, _)| e)
        .collect()
}
