//! End-to-end runs of the `bap` binary: output contents, exit codes, and
//! determinism of the simulation CSV.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn bap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn solve_square_example() {
    let out = bap(&["solve", "--input", data("square3x3.csv").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value 7"), "{text}");
    assert!(text.contains("bottleneck (3,3)"), "{text}");
}

#[test]
fn solve_rectangular_example() {
    let out = bap(&["solve", "--input", data("rect3x4.csv").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value 21.5"), "{text}");
    assert!(text.contains("bottleneck (2,3)"), "{text}");
}

#[test]
fn solve_infeasible_exits_two() {
    let out = bap(&["solve", "--input", data("infeasible.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("infeasible"));
}

#[test]
fn missing_file_exits_one() {
    let out = bap(&["solve", "--input", "/nonexistent/matrix.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn malformed_matrix_exits_one() {
    let out = bap(&["solve", "--input", data("malformed.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot parse"));
}

#[test]
fn unknown_flag_exits_one() {
    let out = bap(&["solve", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = bap(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bounds_theorem1_square() {
    let out = bap(&[
        "bounds",
        "--input",
        data("square3x3.csv").to_str().unwrap(),
        "--method",
        "theorem1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Δ = 0.5"), "{text}");
}

#[test]
fn bounds_relaxed_table_matches_reference_cells() {
    let out = bap(&[
        "bounds",
        "--input",
        data("rect3x4.csv").to_str().unwrap(),
        "--method",
        "relaxed",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for cell in ["[-39.60, inf]", "[-inf, 7.00]", "[-4.70, 3.40]", "[-inf, inf]"] {
        assert!(text.contains(cell), "missing {cell} in:\n{text}");
    }
}

#[test]
fn bounds_naive_table_matches_reference_cells() {
    let out = bap(&[
        "bounds",
        "--input",
        data("rect3x4.csv").to_str().unwrap(),
        "--method",
        "naive",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for cell in ["[-41.25, inf]", "[-5.05, inf]", "[-4.70, 1.75]", "[-12.45, inf]"] {
        assert!(text.contains(cell), "missing {cell} in:\n{text}");
    }
}

#[test]
fn bounds_csv_has_full_precision() {
    let out = bap(&[
        "bounds",
        "--input",
        data("rect3x4.csv").to_str().unwrap(),
        "--method",
        "relaxed",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().starts_with("# method=relaxed"));
    assert!(text.contains("agent,task,lower,upper"));
    let row: Vec<&str> = text
        .lines()
        .find(|l| l.starts_with("0,0,"))
        .expect("edge row present")
        .split(',')
        .collect();
    let lower: f64 = row[2].parse().unwrap();
    assert!((lower + 39.6).abs() < 1e-9);
    assert_eq!(row[3], "inf");
}

#[test]
fn bounds_json_parses() {
    let out = bap(&[
        "bounds",
        "--input",
        data("rect3x4.csv").to_str().unwrap(),
        "--method",
        "naive",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["method"], "naive");
    assert_eq!(doc["intervals"].as_array().unwrap().len(), 12);
}

#[test]
fn json_input_agrees_with_csv_input() {
    let grid = bap_cli::io::parse_matrix_csv(
        &std::fs::read_to_string(data("rect3x4.csv")).unwrap(),
    )
    .unwrap();
    let g = bap_core::BipartiteGraph::from_cost_matrix(&grid).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("rect.json");
    std::fs::write(&json_path, bap_cli::io::write_graph_json(&g)).unwrap();

    let from_json = bap(&["solve", "--input", json_path.to_str().unwrap()]);
    let from_csv = bap(&["solve", "--input", data("rect3x4.csv").to_str().unwrap()]);
    assert!(from_json.status.success());
    assert_eq!(stdout(&from_json), stdout(&from_csv));
}

#[test]
fn verify_reports_zero_violations() {
    for method in ["theorem1", "relaxed", "naive"] {
        let out = bap(&[
            "verify",
            "--input",
            data("rect3x4.csv").to_str().unwrap(),
            "--method",
            method,
            "--trials",
            "400",
            "--seed",
            "7",
        ]);
        assert!(out.status.success(), "method {method}");
        let text = stdout(&out);
        assert!(text.contains("violations 0"), "{text}");
        assert!(text.contains("seed 7"), "{text}");
    }
}

#[test]
fn verify_rejects_zero_trials() {
    let out = bap(&[
        "verify",
        "--input",
        data("rect3x4.csv").to_str().unwrap(),
        "--method",
        "naive",
        "--trials",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let out = bap(&[
            "simulate",
            "--n-min",
            "3",
            "--n-max",
            "5",
            "--trials",
            "3",
            "--seed",
            "11",
            "--jobs",
            jobs,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).contains("wrote 9 records"));
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "4");
    let c = run("c.csv", "1");
    assert_eq!(a, b);
    assert_eq!(a, c);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().next().unwrap(), "n,trial,min_relaxed,min_naive,delta_theorem1");
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn simulate_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = bap(&[
        "simulate",
        "--n-min",
        "2",
        "--n-max",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
