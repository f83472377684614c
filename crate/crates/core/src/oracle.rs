//! Independent brute-force ground truth.
//!
//! Exhaustive matching enumeration on small graphs and seeded Monte-Carlo
//! certification of robustness bounds. Everything here avoids the
//! production solver's shortcuts on purpose: the enumeration path shares
//! no code with the binary search or the threshold loop.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bap::{solve, BottleneckSolution};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId};
use crate::matching::Matching;
use crate::robustness::RobustnessBounds;

/// Agent-count cap for exhaustive enumeration.
pub const MAX_ENUMERATION_AGENTS: usize = 8;

/// One additive perturbation per edge; the domain must equal the graph's
/// edge set and every value must be finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationVector {
    pub deltas: BTreeMap<EdgeId, f64>,
}

impl PerturbationVector {
    /// The identity perturbation on `g`.
    pub fn zero(g: &BipartiteGraph) -> Self {
        Self {
            deltas: g.edges().map(|(e, _)| (e, 0.0)).collect(),
        }
    }
}

/// Outcome of a Monte-Carlo certification run.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub trials: usize,
    pub violations: usize,
    /// First sampled perturbation (by trial index) whose perturbed graph
    /// no longer lists the original bottleneck edge, together with the
    /// perturbed bottleneck edge set.
    pub first_violation: Option<(PerturbationVector, BTreeSet<EdgeId>)>,
}

/// Every matching that covers all agents, each exactly once, in the
/// deterministic order induced by ascending task choices per agent.
pub fn enumerate_agent_saturating_matchings(g: &BipartiteGraph) -> Result<Vec<Matching>> {
    let n = g.num_agents();
    if n > MAX_ENUMERATION_AGENTS {
        return Err(Error::TooLarge {
            num_agents: n,
            limit: MAX_ENUMERATION_AGENTS,
        });
    }
    let adj = g.adjacency();
    let mut used = vec![false; g.num_tasks()];
    let mut stack = Vec::with_capacity(n);
    let mut out = Vec::new();
    enumerate_rec(0, n, &adj, &mut used, &mut stack, &mut out);
    Ok(out)
}

fn enumerate_rec(
    agent: usize,
    n: usize,
    adj: &[Vec<usize>],
    used: &mut [bool],
    stack: &mut Vec<EdgeId>,
    out: &mut Vec<Matching>,
) {
    if agent == n {
        out.push(Matching::from_pairs(stack.clone()));
        return;
    }
    for &t in &adj[agent] {
        if !used[t] {
            used[t] = true;
            stack.push(EdgeId::new(agent, t));
            enumerate_rec(agent + 1, n, adj, used, stack, out);
            stack.pop();
            used[t] = false;
        }
    }
}

/// Largest matching size found by exhaustive search, agents optionally
/// left unmatched. Oracle for the production matching algorithm.
pub fn brute_force_max_cardinality(g: &BipartiteGraph) -> Result<usize> {
    let n = g.num_agents();
    if n > MAX_ENUMERATION_AGENTS {
        return Err(Error::TooLarge {
            num_agents: n,
            limit: MAX_ENUMERATION_AGENTS,
        });
    }
    let adj = g.adjacency();
    let mut used = vec![false; g.num_tasks()];
    fn rec(agent: usize, n: usize, adj: &[Vec<usize>], used: &mut [bool]) -> usize {
        if agent == n {
            return 0;
        }
        let mut best = rec(agent + 1, n, adj, used);
        for &t in &adj[agent] {
            if !used[t] {
                used[t] = true;
                best = best.max(1 + rec(agent + 1, n, adj, used));
                used[t] = false;
            }
        }
        best
    }
    Ok(rec(0, n, &adj, &mut used))
}

/// Bottleneck solution by full enumeration: the minimum over all
/// agent-covering matchings of their largest weight, with the bottleneck
/// edge set collected from every optimal matching.
pub fn brute_force_bottleneck(g: &BipartiteGraph) -> Result<BottleneckSolution> {
    if g.num_agents() == 0 {
        return Err(Error::Infeasible);
    }
    let matchings = enumerate_agent_saturating_matchings(g)?;
    if matchings.is_empty() {
        return Err(Error::Infeasible);
    }

    let maxima: Vec<f64> = matchings
        .iter()
        .map(|m| m.max_weight_on(g).expect("covering matchings are non-empty"))
        .collect();
    let value = maxima
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);

    let mut bottleneck_edges = BTreeSet::new();
    let mut witness = None;
    for (m, &mx) in matchings.iter().zip(&maxima) {
        if mx == value {
            witness.get_or_insert_with(|| m.clone());
            for &e in m.pairs() {
                if g.weight(e) == Some(value) {
                    bottleneck_edges.insert(e);
                }
            }
        }
    }

    Ok(BottleneckSolution {
        value,
        witness: witness.expect("some matching attains the minimum"),
        bottleneck_edges,
    })
}

/// Same structure with every weight shifted by its perturbation.
pub fn apply_perturbation(g: &BipartiteGraph, p: &PerturbationVector) -> Result<BipartiteGraph> {
    if p.deltas.len() != g.edge_count() {
        return Err(Error::DomainMismatch);
    }
    for (&e, &d) in &p.deltas {
        if !g.contains_edge(e) {
            return Err(Error::DomainMismatch);
        }
        if !d.is_finite() {
            return Err(Error::NonFiniteDelta { edge: e, value: d });
        }
    }
    g.map_weights(|e, w| w + p.deltas[&e])
}

/// Monte-Carlo certification: samples perturbations strictly inside the
/// given bounds and re-solves, counting trials where the original
/// bottleneck edge drops out of the perturbed bottleneck edge set.
///
/// Each edge's perturbation is drawn uniformly from
/// `[max(lower + epsilon, -infinite_cap), min(upper - epsilon, infinite_cap)]`;
/// when that window is empty (a pinned edge) the perturbation is zero.
/// Trial `t` derives its own generator from `(seed, t)`, so any reported
/// violation can be replayed and trials are order-independent.
pub fn certify(
    g: &BipartiteGraph,
    bounds: &RobustnessBounds,
    trials: usize,
    seed: u64,
    epsilon: f64,
    infinite_cap: f64,
) -> Result<CertificationReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1"));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter("epsilon must be positive"));
    }
    if infinite_cap.is_nan() || infinite_cap <= 0.0 {
        return Err(Error::InvalidParameter("infinite_cap must be positive"));
    }
    if bounds.intervals.len() != g.edge_count()
        || bounds.intervals.keys().any(|&e| !g.contains_edge(e))
    {
        return Err(Error::DomainMismatch);
    }

    let star = *solve(g)?
        .bottleneck_edges
        .iter()
        .next()
        .expect("bottleneck edge set is non-empty");
    // Small instances are re-solved by enumeration for full independence;
    // larger ones fall back to the production solver.
    let use_enumeration = g.num_agents() <= 5 && g.num_tasks() <= MAX_ENUMERATION_AGENTS;

    let mut violations = 0usize;
    let mut first_violation = None;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed, trial as u64));
        let mut deltas = BTreeMap::new();
        for (&e, iv) in &bounds.intervals {
            let lo = (iv.lower + epsilon).max(-infinite_cap);
            let hi = (iv.upper - epsilon).min(infinite_cap);
            let d = if lo > hi { 0.0 } else { rng.gen_range(lo..=hi) };
            deltas.insert(e, d);
        }
        let pv = PerturbationVector { deltas };
        let perturbed = apply_perturbation(g, &pv)?;
        let sol = if use_enumeration {
            brute_force_bottleneck(&perturbed)?
        } else {
            solve(&perturbed)?
        };
        if !sol.bottleneck_edges.contains(&star) {
            violations += 1;
            if first_violation.is_none() {
                first_violation = Some((pv, sol.bottleneck_edges));
            }
        }
    }

    Ok(CertificationReport {
        trials,
        violations,
        first_violation,
    })
}

/// SplitMix64 combiner for deriving per-trial generator seeds.
fn mix64(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
