//! Weighted bipartite graph model.
//!
//! Agents form the smaller vertex side, tasks the larger; constructors
//! reorient the input whenever that convention is violated and record the
//! flip so results can be reported in the caller's original coordinates.
//! Missing assignments are represented by absent edges, never by sentinel
//! weights, so every stored weight is finite. Graphs are immutable; the
//! two subgraph surgeries return new values.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Identifies an edge by its 0-based (agent, task) endpoint pair.
///
/// The derived ordering is lexicographic by agent then task, which is the
/// tie-break order used everywhere a single representative edge is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    pub agent: usize,
    pub task: usize,
}

impl EdgeId {
    pub fn new(agent: usize, task: usize) -> Self {
        Self { agent, task }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.agent, self.task)
    }
}

/// A weighted bipartite graph with `num_agents <= num_tasks`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph {
    num_agents: usize,
    num_tasks: usize,
    edges: BTreeMap<EdgeId, f64>,
    transposed: bool,
}

impl BipartiteGraph {
    /// Builds a graph from a dense cost grid; `None` entries produce no edge.
    ///
    /// If the grid has more rows than columns it is transposed so the agent
    /// side is the smaller one, and the result remembers the flip (see
    /// [`BipartiteGraph::original_coords`]).
    pub fn from_cost_matrix(entries: &[Vec<Option<f64>>]) -> Result<Self> {
        let rows = entries.len();
        if rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        let cols = entries[0].len();
        if cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (row, r) in entries.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedMatrix { row });
            }
        }

        let transposed = rows > cols;
        let (num_agents, num_tasks) = if transposed { (cols, rows) } else { (rows, cols) };

        let mut edges = BTreeMap::new();
        for (row, r) in entries.iter().enumerate() {
            for (col, cell) in r.iter().enumerate() {
                if let Some(w) = *cell {
                    if !w.is_finite() {
                        return Err(Error::NonFiniteWeight { row, col, value: w });
                    }
                    let edge = if transposed {
                        EdgeId::new(col, row)
                    } else {
                        EdgeId::new(row, col)
                    };
                    edges.insert(edge, w);
                }
            }
        }
        if edges.is_empty() {
            return Err(Error::EmptyMatrix);
        }

        Ok(Self {
            num_agents,
            num_tasks,
            edges,
            transposed,
        })
    }

    /// Builds a graph from an explicit edge list. Reorients (swapping the
    /// two sides) when `num_agents > num_tasks`. Empty edge sets are allowed.
    pub fn from_edges(
        num_agents: usize,
        num_tasks: usize,
        edges: impl IntoIterator<Item = (EdgeId, f64)>,
    ) -> Result<Self> {
        let transposed = num_agents > num_tasks;
        let (na, nt) = if transposed {
            (num_tasks, num_agents)
        } else {
            (num_agents, num_tasks)
        };

        let mut map = BTreeMap::new();
        for (given, w) in edges {
            if given.agent >= num_agents || given.task >= num_tasks {
                return Err(Error::InvalidEdge {
                    edge: given,
                    num_agents,
                    num_tasks,
                });
            }
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight {
                    row: given.agent,
                    col: given.task,
                    value: w,
                });
            }
            let edge = if transposed {
                EdgeId::new(given.task, given.agent)
            } else {
                given
            };
            if map.insert(edge, w).is_some() {
                return Err(Error::DuplicateEdge { edge: given });
            }
        }

        Ok(Self {
            num_agents: na,
            num_tasks: nt,
            edges: map,
            transposed,
        })
    }

    pub fn num_agents(&self) -> usize {
        self.num_agents
    }

    pub fn num_tasks(&self) -> usize {
        self.num_tasks
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True when construction flipped the two sides to restore the
    /// agents-on-the-smaller-side convention.
    pub fn transposed(&self) -> bool {
        self.transposed
    }

    pub fn contains_edge(&self, edge: EdgeId) -> bool {
        self.edges.contains_key(&edge)
    }

    pub fn weight(&self, edge: EdgeId) -> Option<f64> {
        self.edges.get(&edge).copied()
    }

    /// Iterates edges in (agent, task) order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, f64)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    /// Smallest and largest edge weight, if any edge exists.
    pub fn weight_bounds(&self) -> Option<(f64, f64)> {
        let mut it = self.edges.values();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for &w in it {
            lo = lo.min(w);
            hi = hi.max(w);
        }
        Some((lo, hi))
    }

    /// Maps an edge back to the (row, col) coordinates of the matrix the
    /// graph was constructed from.
    pub fn original_coords(&self, edge: EdgeId) -> (usize, usize) {
        if self.transposed {
            (edge.task, edge.agent)
        } else {
            (edge.agent, edge.task)
        }
    }

    /// Same vertices and edge set minus `edge`.
    pub fn remove_edge(&self, edge: EdgeId) -> Result<Self> {
        if !self.contains_edge(edge) {
            return Err(Error::EdgeNotFound { edge });
        }
        let mut edges = self.edges.clone();
        edges.remove(&edge);
        Ok(Self {
            num_agents: self.num_agents,
            num_tasks: self.num_tasks,
            edges,
            transposed: self.transposed,
        })
    }

    /// Deletes both endpoints of `edge` together with every incident edge,
    /// relabelling the remaining vertices densely. The returned value keeps
    /// the map from new indices back to this graph's labels.
    pub fn remove_endpoints(&self, edge: EdgeId) -> Result<ReducedGraph> {
        if !self.contains_edge(edge) {
            return Err(Error::EdgeNotFound { edge });
        }

        let agent_labels: Vec<usize> = (0..self.num_agents).filter(|&a| a != edge.agent).collect();
        let task_labels: Vec<usize> = (0..self.num_tasks).filter(|&t| t != edge.task).collect();

        let mut agent_index = vec![usize::MAX; self.num_agents];
        for (new, &old) in agent_labels.iter().enumerate() {
            agent_index[old] = new;
        }
        let mut task_index = vec![usize::MAX; self.num_tasks];
        for (new, &old) in task_labels.iter().enumerate() {
            task_index[old] = new;
        }

        let edges: BTreeMap<EdgeId, f64> = self
            .edges
            .iter()
            .filter(|(e, _)| e.agent != edge.agent && e.task != edge.task)
            .map(|(e, &w)| (EdgeId::new(agent_index[e.agent], task_index[e.task]), w))
            .collect();

        Ok(ReducedGraph {
            graph: Self {
                num_agents: self.num_agents - 1,
                num_tasks: self.num_tasks - 1,
                edges,
                transposed: self.transposed,
            },
            agent_labels,
            task_labels,
        })
    }

    /// Subgraph keeping only the edges the predicate accepts. Vertices are
    /// unchanged.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId, f64) -> bool) -> Self {
        Self {
            num_agents: self.num_agents,
            num_tasks: self.num_tasks,
            edges: self
                .edges
                .iter()
                .filter(|(&e, &w)| keep(e, w))
                .map(|(&e, &w)| (e, w))
                .collect(),
            transposed: self.transposed,
        }
    }

    /// Same structure with every weight replaced by `f(edge, weight)`.
    pub fn map_weights(&self, mut f: impl FnMut(EdgeId, f64) -> f64) -> Result<Self> {
        let mut edges = BTreeMap::new();
        for (&e, &w) in &self.edges {
            let new = f(e, w);
            if !new.is_finite() {
                return Err(Error::NonFiniteWeight {
                    row: e.agent,
                    col: e.task,
                    value: new,
                });
            }
            edges.insert(e, new);
        }
        Ok(Self {
            num_agents: self.num_agents,
            num_tasks: self.num_tasks,
            edges,
            transposed: self.transposed,
        })
    }

    /// Sorted, deduplicated weight values.
    pub(crate) fn distinct_weights(&self) -> Vec<f64> {
        let mut ws: Vec<f64> = self.edges.values().copied().collect();
        ws.sort_by(|a, b| a.partial_cmp(b).expect("weights are finite"));
        ws.dedup();
        ws
    }

    /// Agent-indexed adjacency lists, tasks in ascending order.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_agents];
        for e in self.edges.keys() {
            adj[e.agent].push(e.task);
        }
        adj
    }
}

/// Result of [`BipartiteGraph::remove_endpoints`]: the relabelled subgraph
/// plus the maps from its dense indices back to the parent graph's labels.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: BipartiteGraph,
    agent_labels: Vec<usize>,
    task_labels: Vec<usize>,
}

impl ReducedGraph {
    /// Translates an edge of the reduced graph into parent-graph labels.
    pub fn original_edge(&self, edge: EdgeId) -> EdgeId {
        EdgeId::new(self.agent_labels[edge.agent], self.task_labels[edge.task])
    }

    pub fn agent_labels(&self) -> &[usize] {
        &self.agent_labels
    }

    pub fn task_labels(&self) -> &[usize] {
        &self.task_labels
    }
}
