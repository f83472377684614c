//! Maximum-cardinality bipartite matching (Hopcroft–Karp).
//!
//! Visit order is fixed by the graph's sorted adjacency, so the returned
//! matching is deterministic for a given graph.

use std::collections::VecDeque;

use crate::graph::{BipartiteGraph, EdgeId};

const NONE: usize = usize::MAX;

/// A set of pairwise non-adjacent edges, sorted by agent index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<EdgeId>,
}

impl Matching {
    pub(crate) fn from_pairs(mut pairs: Vec<EdgeId>) -> Self {
        pairs.sort();
        debug_assert!(pairs.windows(2).all(|w| w[0].agent != w[1].agent));
        debug_assert!({
            let mut tasks: Vec<usize> = pairs.iter().map(|e| e.task).collect();
            tasks.sort_unstable();
            tasks.windows(2).all(|w| w[0] != w[1])
        });
        Self { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[EdgeId] {
        &self.pairs
    }

    pub fn contains(&self, edge: EdgeId) -> bool {
        self.pairs.binary_search(&edge).is_ok()
    }

    /// Largest weight the matching uses in `g`, if it is non-empty.
    pub fn max_weight_on(&self, g: &BipartiteGraph) -> Option<f64> {
        self.pairs
            .iter()
            .map(|&e| g.weight(e).expect("matching edge exists in graph"))
            .fold(None, |acc, w| Some(acc.map_or(w, |m: f64| m.max(w))))
    }

    /// True when every pair is an edge of `g`.
    pub fn is_valid_on(&self, g: &BipartiteGraph) -> bool {
        self.pairs.iter().all(|&e| g.contains_edge(e))
    }
}

/// Returns a maximum-cardinality matching of `g`.
///
/// The cardinality is unique; the witness itself is the deterministic one
/// produced by scanning edges in (agent, task) order.
pub fn maximum_matching(g: &BipartiteGraph) -> Matching {
    let adj = g.adjacency();
    let num_agents = g.num_agents();
    let num_tasks = g.num_tasks();
    let mut agent_to_task = vec![NONE; num_agents];
    let mut task_to_agent = vec![NONE; num_tasks];
    let mut dist = vec![NONE; num_agents];

    loop {
        // BFS phase: layer agents by shortest alternating path from a free agent.
        let mut queue = VecDeque::new();
        for a in 0..num_agents {
            if agent_to_task[a] == NONE {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = NONE;
            }
        }
        let mut free_task_reachable = false;
        while let Some(a) = queue.pop_front() {
            for &t in &adj[a] {
                let a2 = task_to_agent[t];
                if a2 == NONE {
                    free_task_reachable = true;
                } else if dist[a2] == NONE {
                    dist[a2] = dist[a] + 1;
                    queue.push_back(a2);
                }
            }
        }
        if !free_task_reachable {
            break;
        }

        // DFS phase: augment along the layered structure.
        let mut advanced = false;
        for a in 0..num_agents {
            if agent_to_task[a] == NONE
                && augment(a, &adj, &mut agent_to_task, &mut task_to_agent, &mut dist)
            {
                advanced = true;
            }
        }
        if !advanced {
            break;
        }
    }

    Matching::from_pairs(
        agent_to_task
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t != NONE)
            .map(|(a, &t)| EdgeId::new(a, t))
            .collect(),
    )
}

fn augment(
    a: usize,
    adj: &[Vec<usize>],
    agent_to_task: &mut [usize],
    task_to_agent: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &t in &adj[a] {
        let a2 = task_to_agent[t];
        if a2 == NONE || (dist[a2] == dist[a] + 1 && augment(a2, adj, agent_to_task, task_to_agent, dist))
        {
            agent_to_task[a] = t;
            task_to_agent[t] = a;
            return true;
        }
    }
    dist[a] = NONE;
    false
}

/// True iff a matching of at least `required_size` edges exists in `g`.
pub fn has_maximal_matching(g: &BipartiteGraph, required_size: usize) -> bool {
    maximum_matching(g).len() >= required_size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;

    fn grid(rows: &[&[f64]]) -> Vec<Vec<Option<f64>>> {
        rows.iter()
            .map(|r| r.iter().map(|&w| Some(w)).collect())
            .collect()
    }

    fn example1() -> BipartiteGraph {
        BipartiteGraph::from_cost_matrix(&grid(&[&[3.0, 2.0, 1.0], &[4.0, 5.0, 6.0], &[9.0, 8.0, 7.0]]))
            .unwrap()
    }

    #[test]
    fn full_3x3_matches_all_agents() {
        let m = maximum_matching(&example1());
        assert_eq!(m.len(), 3);
        assert!(m.is_valid_on(&example1()));
    }

    #[test]
    fn empty_graph_gives_empty_matching() {
        let g = BipartiteGraph::from_edges(0, 0, []).unwrap();
        assert!(maximum_matching(&g).is_empty());
        assert!(has_maximal_matching(&g, 0));
    }

    #[test]
    fn weight_threshold_controls_feasibility() {
        let g = example1();
        let below = g.filter_edges(|_, w| w < 7.0);
        assert!(!has_maximal_matching(&below, 3));
        let at = g.filter_edges(|_, w| w <= 7.0);
        assert!(has_maximal_matching(&at, 3));
    }

    #[test]
    fn rectangular_instance_after_edge_removal() {
        let m = grid(&[
            &[64.5, 79.2, 25.0, 9.8],
            &[85.9, 81.2, 21.5, 28.3],
            &[47.1, 12.1, 41.3, 35.7],
        ]);
        let g = BipartiteGraph::from_cost_matrix(&m)
            .unwrap()
            .remove_edge(EdgeId::new(1, 2))
            .unwrap();
        assert_eq!(g.edge_count(), 11);
        assert_eq!(maximum_matching(&g).len(), 3);
    }

    #[test]
    fn cardinality_respects_size_bound() {
        let g = BipartiteGraph::from_edges(
            2,
            3,
            [
                (EdgeId::new(0, 0), 1.0),
                (EdgeId::new(0, 1), 2.0),
                (EdgeId::new(1, 0), 3.0),
            ],
        )
        .unwrap();
        let m = maximum_matching(&g);
        assert!(m.len() <= g.num_agents().min(g.num_tasks()));
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn adding_an_edge_never_shrinks_the_matching() {
        let base = BipartiteGraph::from_edges(
            3,
            3,
            [
                (EdgeId::new(0, 0), 1.0),
                (EdgeId::new(1, 0), 1.0),
                (EdgeId::new(2, 2), 1.0),
            ],
        )
        .unwrap();
        let before = maximum_matching(&base).len();
        let bigger = BipartiteGraph::from_edges(
            3,
            3,
            base.edges().chain([(EdgeId::new(1, 1), 1.0)]),
        )
        .unwrap();
        assert!(maximum_matching(&bigger).len() >= before);
    }
}
