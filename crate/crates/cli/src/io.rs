//! Cost-matrix input formats and the JSON graph format.
//!
//! CSV: one row per agent, comma-separated weights. An empty cell or the
//! token `inf` marks a missing assignment. A header row is detected and
//! skipped when any of its cells is neither numeric, empty, nor `inf`.
//!
//! JSON: `{"agents": n, "tasks": m, "edges": [{"a": i, "t": j, "w": x}]}`
//! with 0-based indices.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use bap_core::{BipartiteGraph, EdgeId};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    agents: usize,
    tasks: usize,
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRecord {
    a: usize,
    t: usize,
    w: f64,
}

/// Reads a graph from `path`, picking the format from the extension
/// (`.json` vs anything else) with a content sniff as fallback.
pub fn read_graph(path: &Path) -> Result<BipartiteGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let is_json = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with('{');
    let parsed = if is_json {
        parse_graph_json(&text)
    } else {
        parse_matrix_csv(&text).and_then(|grid| {
            BipartiteGraph::from_cost_matrix(&grid).map_err(|e| e.to_string())
        })
    };
    parsed.map_err(|message| CliError::Parse {
        path: path.display().to_string(),
        message,
    })
}

/// Parses CSV text into the dense grid accepted by the graph constructor.
pub fn parse_matrix_csv(text: &str) -> Result<Vec<Vec<Option<f64>>>, String> {
    let mut rows: Vec<Vec<Option<f64>>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Result<Vec<Option<f64>>, String> = line.split(',').map(parse_cell).collect();
        match cells {
            Ok(row) => rows.push(row),
            Err(msg) => {
                // a non-numeric first line is a header
                if idx == 0 && rows.is_empty() {
                    continue;
                }
                return Err(format!("line {}: {msg}", idx + 1));
            }
        }
    }
    if rows.is_empty() {
        return Err("no data rows".to_string());
    }
    Ok(rows)
}

fn parse_cell(cell: &str) -> Result<Option<f64>, String> {
    let token = cell.trim();
    if token.is_empty() {
        return Ok(None);
    }
    let lower = token.to_ascii_lowercase();
    if matches!(lower.as_str(), "inf" | "+inf" | "infinity" | "+infinity") {
        return Ok(None);
    }
    token
        .parse::<f64>()
        .map(Some)
        .map_err(|_| format!("invalid weight {token:?}"))
}

/// Parses the JSON graph format. Instances with more agents than tasks are
/// reoriented the same way matrix construction reorients them.
pub fn parse_graph_json(text: &str) -> Result<BipartiteGraph, String> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let edges = file
        .edges
        .iter()
        .map(|r| (EdgeId::new(r.a, r.t), r.w));
    BipartiteGraph::from_edges(file.agents, file.tasks, edges).map_err(|e| e.to_string())
}

/// Writes a graph in the JSON format; `parse_graph_json` reads it back to
/// an identical value.
pub fn write_graph_json(g: &BipartiteGraph) -> String {
    let file = GraphFile {
        agents: g.num_agents(),
        tasks: g.num_tasks(),
        edges: g
            .edges()
            .map(|(e, w)| EdgeRecord {
                a: e.agent,
                t: e.task,
                w,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("graph serializes")
}
