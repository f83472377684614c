//! Perturbation robustness of the bottleneck assignment.
//!
//! All three analyses certify the same property: when every edge weight
//! moves strictly inside its interval, the original bottleneck edge is
//! still a bottleneck edge of the perturbed graph.
//!
//! The analyses are built from three critical edges: the bottleneck of the
//! graph itself, the bottleneck after deleting the bottleneck edge's two
//! endpoints, and the bottleneck after deleting only the edge. The gaps
//! between their weights yield
//!
//! * a uniform symmetric radius valid for every edge at once
//!   ([`theorem1_delta`], tag `theorem1-box`),
//! * per-edge intervals from the critical-edge gaps, leaving edges between
//!   the two outer critical weights fully unconstrained ([`relaxed_bounds`]),
//! * per-edge intervals from nearest-weight gaps alone, computable in one
//!   pass over the weights without further matching calls ([`naive_bounds`]).

use std::collections::BTreeMap;

use crate::bap::solve;
use crate::error::Result;
use crate::graph::{BipartiteGraph, EdgeId};
use crate::matching::maximum_matching;

/// An edge together with its weight, reported in the analyzed graph's labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalEdge {
    pub edge: EdgeId,
    pub weight: f64,
}

/// The bottleneck edge and the bottlenecks of the two derived subgraphs.
///
/// `endpoint_removed` is absent when deleting the bottleneck pair leaves no
/// agents (or no covering matching); `edge_removed` is absent when the
/// bottleneck edge is the only way to cover its agent.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalEdges {
    /// Bottleneck of the subgraph with both endpoints of the bottleneck
    /// edge (and all incident edges) deleted. Weighs no more than the
    /// bottleneck.
    pub endpoint_removed: Option<CriticalEdge>,
    /// Deterministic representative of the graph's bottleneck edge set:
    /// its lexicographically smallest member.
    pub bottleneck: CriticalEdge,
    /// Bottleneck of the subgraph with only the bottleneck edge deleted.
    /// Weighs no less than the bottleneck.
    pub edge_removed: Option<CriticalEdge>,
}

impl CriticalEdges {
    /// Half the gap from the bottleneck weight down to the
    /// endpoint-removed bottleneck; infinite when the latter is absent.
    pub fn margin_below(&self) -> f64 {
        self.endpoint_removed
            .map_or(f64::INFINITY, |c| 0.5 * (self.bottleneck.weight - c.weight))
    }

    /// Half the gap from the bottleneck weight up to the edge-removed
    /// bottleneck; infinite when the latter is absent.
    pub fn margin_above(&self) -> f64 {
        self.edge_removed
            .map_or(f64::INFINITY, |c| 0.5 * (c.weight - self.bottleneck.weight))
    }
}

/// Allowable perturbation range for one edge. Always contains zero;
/// either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationInterval {
    pub lower: f64,
    pub upper: f64,
}

impl PerturbationInterval {
    pub fn new(lower: f64, upper: f64) -> Self {
        assert!(
            lower <= 0.0 && 0.0 <= upper,
            "perturbation interval [{lower}, {upper}] must contain zero"
        );
        Self { lower, upper }
    }

    pub fn contains_zero(&self) -> bool {
        self.lower <= 0.0 && 0.0 <= self.upper
    }
}

/// Which analysis produced a set of bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsMethod {
    Theorem1Box,
    Relaxed,
    Naive,
}

impl BoundsMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundsMethod::Theorem1Box => "theorem1-box",
            BoundsMethod::Relaxed => "relaxed",
            BoundsMethod::Naive => "naive",
        }
    }
}

/// Per-edge allowable perturbation intervals plus the two scalar margins
/// that generated them.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessBounds {
    pub method: BoundsMethod,
    pub delta_minus: f64,
    pub delta_plus: f64,
    /// One interval per edge of the analyzed graph.
    pub intervals: BTreeMap<EdgeId, PerturbationInterval>,
}

/// Computes the three critical edges of a feasible graph.
///
/// The bottleneck representative is the lexicographically smallest member
/// of the bottleneck edge set, and subgraph bottlenecks are reported in
/// the original graph's labels.
pub fn critical_edges(g: &BipartiteGraph) -> Result<CriticalEdges> {
    let sol = solve(g)?;
    let star = *sol
        .bottleneck_edges
        .iter()
        .next()
        .expect("bottleneck edge set is non-empty");
    let bottleneck = CriticalEdge {
        edge: star,
        weight: g.weight(star).expect("bottleneck edge exists"),
    };

    let endpoint_removed = if g.num_agents() <= 1 {
        None
    } else {
        let reduced = g.remove_endpoints(star)?;
        if maximum_matching(&reduced.graph).len() < reduced.graph.num_agents() {
            None
        } else {
            let sub = solve(&reduced.graph)?;
            let rep = *sub.bottleneck_edges.iter().next().expect("non-empty");
            Some(CriticalEdge {
                edge: reduced.original_edge(rep),
                weight: sub.value,
            })
        }
    };

    let edge_removed = {
        let pruned = g.remove_edge(star)?;
        if maximum_matching(&pruned).len() < g.num_agents() {
            None
        } else {
            let sub = solve(&pruned)?;
            let rep = *sub.bottleneck_edges.iter().next().expect("non-empty");
            Some(CriticalEdge {
                edge: rep,
                weight: sub.value,
            })
        }
    };

    Ok(CriticalEdges {
        endpoint_removed,
        bottleneck,
        edge_removed,
    })
}

/// Uniform symmetric radius: every weight may move by at most this amount
/// (strictly, at the boundary) without changing the bottleneck edge.
/// Infinite when both subgraph bottlenecks are absent.
pub fn theorem1_delta(g: &BipartiteGraph) -> Result<(f64, CriticalEdges)> {
    let crit = critical_edges(g)?;
    let delta = theorem1_delta_from_critical(&crit);
    Ok((delta, crit))
}

pub fn theorem1_delta_from_critical(crit: &CriticalEdges) -> f64 {
    crit.margin_below().min(crit.margin_above())
}

/// The uniform radius expressed as per-edge bounds, so it can be fed to
/// the same certification machinery as the per-edge analyses.
pub fn theorem1_bounds(g: &BipartiteGraph) -> Result<RobustnessBounds> {
    let (delta, _) = theorem1_delta(g)?;
    Ok(theorem1_bounds_with_delta(g, delta))
}

fn theorem1_bounds_with_delta(g: &BipartiteGraph, delta: f64) -> RobustnessBounds {
    let intervals = g
        .edges()
        .map(|(e, _)| (e, PerturbationInterval::new(-delta, delta)))
        .collect();
    RobustnessBounds {
        method: BoundsMethod::Theorem1Box,
        delta_minus: delta,
        delta_plus: delta,
        intervals,
    }
}

/// Per-edge bounds from the critical-edge gaps.
///
/// Edges at or above the edge-removed bottleneck weight are bounded below
/// and free above; edges at or below the endpoint-removed bottleneck
/// weight are bounded above and free below; edges strictly between the two
/// outer critical weights are unconstrained; the bottleneck edge itself
/// gets the asymmetric box `[-delta_minus, +delta_plus]`.
pub fn relaxed_bounds(g: &BipartiteGraph) -> Result<RobustnessBounds> {
    let crit = critical_edges(g)?;
    Ok(relaxed_bounds_from_critical(g, &crit))
}

pub fn relaxed_bounds_from_critical(g: &BipartiteGraph, crit: &CriticalEdges) -> RobustnessBounds {
    let star = crit.bottleneck;
    let delta_minus = crit.margin_below();
    let delta_plus = crit.margin_above();

    let intervals = g
        .edges()
        .map(|(e, w)| {
            let iv = if e == star.edge {
                PerturbationInterval::new(-delta_minus, delta_plus)
            } else {
                // Bounds are written as margin - gap so that the critical
                // edges themselves land exactly on +-margin in floating
                // point, keeping the ordering arguments exact.
                let gap = w - star.weight;
                let heavy = crit.edge_removed.is_some_and(|c| w >= c.weight);
                let light = crit.endpoint_removed.is_some_and(|c| w <= c.weight);
                match (heavy, light) {
                    // Only possible when all three critical weights tie;
                    // such an edge cannot move in either direction.
                    (true, true) => {
                        PerturbationInterval::new(delta_plus - gap, -delta_minus - gap)
                    }
                    (true, false) => PerturbationInterval::new(delta_plus - gap, f64::INFINITY),
                    (false, true) => {
                        PerturbationInterval::new(f64::NEG_INFINITY, -delta_minus - gap)
                    }
                    (false, false) => {
                        PerturbationInterval::new(f64::NEG_INFINITY, f64::INFINITY)
                    }
                }
            };
            (e, iv)
        })
        .collect();

    RobustnessBounds {
        method: BoundsMethod::Relaxed,
        delta_minus,
        delta_plus,
        intervals,
    }
}

/// Per-edge bounds from nearest-weight gaps alone.
///
/// Uses only the bottleneck edge and the weight multiset: the margins are
/// half the smallest gap from the bottleneck weight to any other weight on
/// each side (zero when another edge ties the bottleneck weight, infinite
/// when that side is empty). Two single passes over the edges; no matching
/// calls beyond identifying the bottleneck.
pub fn naive_bounds(g: &BipartiteGraph) -> Result<RobustnessBounds> {
    let crit = critical_edges(g)?;
    Ok(naive_bounds_from_critical(g, &crit))
}

pub fn naive_bounds_from_critical(g: &BipartiteGraph, crit: &CriticalEdges) -> RobustnessBounds {
    let star = crit.bottleneck;
    let (delta_minus, delta_plus) = naive_margins(g.edges(), star);
    let intervals = naive_intervals(g.edges(), star, delta_minus, delta_plus);
    RobustnessBounds {
        method: BoundsMethod::Naive,
        delta_minus,
        delta_plus,
        intervals,
    }
}

/// Single pass: half the minimum weight gap on each side of the bottleneck,
/// taken over all edges other than the bottleneck edge itself.
fn naive_margins(edges: impl Iterator<Item = (EdgeId, f64)>, star: CriticalEdge) -> (f64, f64) {
    let mut below = f64::INFINITY;
    let mut above = f64::INFINITY;
    for (e, w) in edges {
        if e == star.edge {
            continue;
        }
        if w <= star.weight {
            below = below.min(star.weight - w);
        }
        if w >= star.weight {
            above = above.min(w - star.weight);
        }
    }
    (0.5 * below, 0.5 * above)
}

/// Single pass: edges above the bottleneck weight are bounded below and
/// free above, edges below are the mirror image, and edges tying the
/// bottleneck weight share its box.
fn naive_intervals(
    edges: impl Iterator<Item = (EdgeId, f64)>,
    star: CriticalEdge,
    delta_minus: f64,
    delta_plus: f64,
) -> BTreeMap<EdgeId, PerturbationInterval> {
    edges
        .map(|(e, w)| {
            let gap = w - star.weight;
            let iv = if w > star.weight {
                PerturbationInterval::new(delta_plus - gap, f64::INFINITY)
            } else if w < star.weight {
                PerturbationInterval::new(f64::NEG_INFINITY, -delta_minus - gap)
            } else {
                PerturbationInterval::new(-delta_minus, delta_plus)
            };
            (e, iv)
        })
        .collect()
}

/// Smallest absolute value over all finite interval endpoints; infinite
/// when every endpoint is infinite. This is the "tightest bound" summary
/// used to compare the analyses.
pub fn min_finite_magnitude(bounds: &RobustnessBounds) -> f64 {
    bounds
        .intervals
        .values()
        .flat_map(|iv| [iv.lower, iv.upper])
        .filter(|b| b.is_finite())
        .map(f64::abs)
        .fold(f64::INFINITY, f64::min)
}
