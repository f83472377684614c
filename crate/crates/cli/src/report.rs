//! Human- and machine-readable rendering of solutions and bounds.
//!
//! Table mode rounds to two decimals and uses 1-based (row, col) indices
//! of the input matrix; csv and json modes use 0-based indices and print
//! numbers in shortest round-trip form, with infinite interval ends
//! rendered as `inf` / `-inf`.

use serde_json::{json, Value};

use bap_core::oracle::CertificationReport;
use bap_core::{BipartiteGraph, BottleneckSolution, BoundsMethod, EdgeId, RobustnessBounds};

/// Shortest round-trip rendering; infinities become `inf` / `-inf`.
pub fn format_bound(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

/// Two-decimal rendering used by table mode.
pub fn format_bound_rounded(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.2}")
    } else {
        format_bound(x)
    }
}

fn display_coords(g: &BipartiteGraph, e: EdgeId) -> (usize, usize) {
    let (r, c) = g.original_coords(e);
    (r + 1, c + 1)
}

/// Matrix dimensions in the caller's original orientation.
fn original_dims(g: &BipartiteGraph) -> (usize, usize) {
    if g.transposed() {
        (g.num_tasks(), g.num_agents())
    } else {
        (g.num_agents(), g.num_tasks())
    }
}

fn edge_at(g: &BipartiteGraph, row: usize, col: usize) -> EdgeId {
    if g.transposed() {
        EdgeId::new(col, row)
    } else {
        EdgeId::new(row, col)
    }
}

pub fn render_solution(g: &BipartiteGraph, sol: &BottleneckSolution) -> String {
    let mut bottleneck: Vec<(usize, usize)> = sol
        .bottleneck_edges
        .iter()
        .map(|&e| display_coords(g, e))
        .collect();
    bottleneck.sort_unstable();
    let mut witness: Vec<(usize, usize)> = sol
        .witness
        .pairs()
        .iter()
        .map(|&e| display_coords(g, e))
        .collect();
    witness.sort_unstable();

    let pair_list = |pairs: &[(usize, usize)]| {
        pairs
            .iter()
            .map(|(r, c)| format!("({r},{c})"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "value {}\nbottleneck {}\nwitness {}\n",
        format_bound(sol.value),
        pair_list(&bottleneck),
        pair_list(&witness)
    )
}

pub fn render_bounds_table(g: &BipartiteGraph, bounds: &RobustnessBounds) -> String {
    let mut out = format!("method {}\n", bounds.method.as_str());
    if bounds.method == BoundsMethod::Theorem1Box {
        out.push_str(&format!("Δ = {}\n", format_bound_rounded(bounds.delta_minus)));
    } else {
        out.push_str(&format!(
            "Δ- = {}  Δ+ = {}\n",
            format_bound_rounded(bounds.delta_minus),
            format_bound_rounded(bounds.delta_plus)
        ));
    }

    let (rows, cols) = original_dims(g);
    let cell = |r: usize, c: usize| -> String {
        match bounds.intervals.get(&edge_at(g, r, c)) {
            Some(iv) => format!(
                "[{}, {}]",
                format_bound_rounded(iv.lower),
                format_bound_rounded(iv.upper)
            ),
            None => "-".to_string(),
        }
    };

    let row_label = |r: usize| format!("A{}", r + 1);
    let mut col_widths: Vec<usize> = (0..cols)
        .map(|c| {
            (0..rows)
                .map(|r| cell(r, c).len())
                .chain(std::iter::once(format!("T{}", c + 1).len()))
                .max()
                .unwrap_or(1)
        })
        .collect();
    let label_width = (0..rows).map(|r| row_label(r).len()).max().unwrap_or(1);
    for w in &mut col_widths {
        *w += 2;
    }

    out.push_str(&" ".repeat(label_width));
    for (c, w) in col_widths.iter().enumerate() {
        out.push_str(&format!("{:>w$}", format!("T{}", c + 1), w = w));
    }
    out.push('\n');
    for r in 0..rows {
        out.push_str(&format!("{:<label_width$}", row_label(r)));
        for (c, w) in col_widths.iter().enumerate() {
            out.push_str(&format!("{:>w$}", cell(r, c), w = w));
        }
        out.push('\n');
    }
    out
}

pub fn render_bounds_csv(bounds: &RobustnessBounds) -> String {
    let mut out = format!(
        "# method={}\n# delta_minus={}\n# delta_plus={}\n",
        bounds.method.as_str(),
        format_bound(bounds.delta_minus),
        format_bound(bounds.delta_plus)
    );
    out.push_str("agent,task,lower,upper\n");
    for (e, iv) in &bounds.intervals {
        out.push_str(&format!(
            "{},{},{},{}\n",
            e.agent,
            e.task,
            format_bound(iv.lower),
            format_bound(iv.upper)
        ));
    }
    out
}

fn bound_to_json(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(format_bound(x))
    }
}

pub fn render_bounds_json(g: &BipartiteGraph, bounds: &RobustnessBounds) -> String {
    let intervals: Vec<Value> = bounds
        .intervals
        .iter()
        .map(|(e, iv)| {
            json!({
                "agent": e.agent,
                "task": e.task,
                "weight": g.weight(*e).expect("interval edge exists"),
                "lower": bound_to_json(iv.lower),
                "upper": bound_to_json(iv.upper),
            })
        })
        .collect();
    let doc = json!({
        "method": bounds.method.as_str(),
        "delta_minus": bound_to_json(bounds.delta_minus),
        "delta_plus": bound_to_json(bounds.delta_plus),
        "intervals": intervals,
    });
    serde_json::to_string_pretty(&doc).expect("bounds serialize")
}

pub fn render_certification(g: &BipartiteGraph, report: &CertificationReport, seed: u64) -> String {
    let mut out = format!(
        "trials {}\nviolations {}\nseed {}\n",
        report.trials, report.violations, seed
    );
    if let Some((pv, edges)) = &report.first_violation {
        let mut coords: Vec<(usize, usize)> =
            edges.iter().map(|&e| display_coords(g, e)).collect();
        coords.sort_unstable();
        let list = coords
            .iter()
            .map(|(r, c)| format!("({r},{c})"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "first violation: perturbed bottleneck edges {list}\n"
        ));
        let mut largest = (EdgeId::new(0, 0), 0.0f64);
        for (&e, &d) in &pv.deltas {
            if d.abs() >= largest.1.abs() {
                largest = (e, d);
            }
        }
        let (r, c) = display_coords(g, largest.0);
        out.push_str(&format!(
            "largest perturbation {} at ({r},{c})\n",
            format_bound(largest.1)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use bap_core::{naive_bounds, relaxed_bounds, solve, theorem1_bounds};

    fn rectangular() -> BipartiteGraph {
        let rows: Vec<Vec<Option<f64>>> = [
            [64.5, 79.2, 25.0, 9.8],
            [85.9, 81.2, 21.5, 28.3],
            [47.1, 12.1, 41.3, 35.7],
        ]
        .iter()
        .map(|r| r.iter().map(|&w| Some(w)).collect())
        .collect();
        BipartiteGraph::from_cost_matrix(&rows).unwrap()
    }

    #[test]
    fn solution_rendering_uses_one_based_coords() {
        let g = rectangular();
        let text = render_solution(&g, &solve(&g).unwrap());
        assert!(text.contains("value 21.5"));
        assert!(text.contains("bottleneck (2,3)"));
        assert!(text.contains("witness (1,4) (2,3) (3,2)"));
    }

    #[test]
    fn table_contains_reference_cells() {
        let g = rectangular();
        let table = render_bounds_table(&g, &relaxed_bounds(&g).unwrap());
        assert!(table.contains("[-39.60, inf]"));
        assert!(table.contains("[-inf, 7.00]"));
        assert!(table.contains("[-4.70, 3.40]"));
        let table = render_bounds_table(&g, &naive_bounds(&g).unwrap());
        assert!(table.contains("[-41.25, inf]"));
        assert!(table.contains("[-5.05, inf]"));
        assert!(table.contains("[-4.70, 1.75]"));
        assert!(table.contains("[-12.45, inf]"));
    }

    #[test]
    fn csv_and_table_agree_after_rounding() {
        let g = rectangular();
        for bounds in [
            theorem1_bounds(&g).unwrap(),
            relaxed_bounds(&g).unwrap(),
            naive_bounds(&g).unwrap(),
        ] {
            let table = render_bounds_table(&g, &bounds);
            let csv = render_bounds_csv(&bounds);
            for line in csv.lines().skip(4) {
                let fields: Vec<&str> = line.split(',').collect();
                let parse = |s: &str| -> f64 {
                    match s {
                        "inf" => f64::INFINITY,
                        "-inf" => f64::NEG_INFINITY,
                        other => other.parse().unwrap(),
                    }
                };
                let cell = format!(
                    "[{}, {}]",
                    format_bound_rounded(parse(fields[2])),
                    format_bound_rounded(parse(fields[3]))
                );
                assert!(table.contains(&cell), "{cell} missing from table");
            }
        }
    }

    #[test]
    fn json_renders_infinite_ends_as_strings() {
        let g = rectangular();
        let text = render_bounds_json(&g, &relaxed_bounds(&g).unwrap());
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["method"], "relaxed");
        let intervals = doc["intervals"].as_array().unwrap();
        assert_eq!(intervals.len(), 12);
        let first = &intervals[0];
        assert_eq!(first["agent"], 0);
        assert_eq!(first["upper"], "inf");
        assert!((first["lower"].as_f64().unwrap() + 39.6).abs() < 1e-9);
    }

    #[test]
    fn missing_edges_render_as_dashes() {
        let g = BipartiteGraph::from_cost_matrix(&[
            vec![Some(1.0), None],
            vec![Some(3.0), Some(4.0)],
        ])
        .unwrap();
        let table = render_bounds_table(&g, &naive_bounds(&g).unwrap());
        assert!(table.contains('-'));
        assert!(table.lines().count() >= 4);
    }
}
