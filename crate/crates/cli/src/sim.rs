//! Random-graph sweep comparing the minimum certified perturbation of the
//! three bound methods across problem sizes.
//!
//! Every (size, trial) cell derives its own generator from the run seed,
//! so the output is byte-identical for a given seed no matter how many
//! worker threads are used.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use bap_core::robustness::{
    naive_bounds_from_critical, relaxed_bounds_from_critical, theorem1_delta_from_critical,
};
use bap_core::{critical_edges, min_finite_magnitude, BipartiteGraph, EdgeId};

use crate::CliError;

pub const CSV_HEADER: &str = "n,trial,min_relaxed,min_naive,delta_theorem1";

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub trials_per_size: usize,
    pub weight_low: f64,
    pub weight_high: f64,
    pub seed: u64,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_min < 3 {
            return Err(CliError::Usage("--n-min must be at least 3".into()));
        }
        if self.n_min > self.n_max {
            return Err(CliError::Usage("--n-min must not exceed --n-max".into()));
        }
        if self.trials_per_size == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        if !self.weight_low.is_finite()
            || !self.weight_high.is_finite()
            || self.weight_low >= self.weight_high
        {
            return Err(CliError::Usage(
                "--weight-range must be an increasing pair of finite numbers".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRecord {
    pub n: usize,
    pub trial: usize,
    pub min_relaxed: f64,
    pub min_naive: f64,
    pub delta_theorem1: f64,
}

/// Fully connected n-by-n instance with i.i.d. uniform weights.
pub fn random_full_graph(n: usize, low: f64, high: f64, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * n);
    for a in 0..n {
        for t in 0..n {
            edges.push((EdgeId::new(a, t), rng.gen_range(low..high)));
        }
    }
    BipartiteGraph::from_edges(n, n, edges).expect("generated edges are valid")
}

fn cell_seed(seed: u64, n: usize, trial: usize) -> u64 {
    mix64(mix64(seed, n as u64), trial as u64)
}

fn mix64(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn compute_cell(cfg: &SimulationConfig, n: usize, trial: usize) -> SimulationRecord {
    let g = random_full_graph(
        n,
        cfg.weight_low,
        cfg.weight_high,
        cell_seed(cfg.seed, n, trial),
    );
    let crit = critical_edges(&g).expect("fully connected instances are feasible");
    let relaxed = relaxed_bounds_from_critical(&g, &crit);
    let naive = naive_bounds_from_critical(&g, &crit);
    SimulationRecord {
        n,
        trial,
        min_relaxed: min_finite_magnitude(&relaxed),
        min_naive: min_finite_magnitude(&naive),
        delta_theorem1: theorem1_delta_from_critical(&crit),
    }
}

/// Runs the sweep, returning records sorted by (n, trial).
pub fn run_simulation(cfg: &SimulationConfig) -> Result<Vec<SimulationRecord>, CliError> {
    cfg.validate()?;
    let cells: Vec<(usize, usize)> = (cfg.n_min..=cfg.n_max)
        .flat_map(|n| (0..cfg.trials_per_size).map(move |t| (n, t)))
        .collect();

    let work = || {
        cells
            .par_iter()
            .map(|&(n, t)| compute_cell(cfg, n, t))
            .collect::<Vec<_>>()
    };
    let mut records = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?
            .install(work)
    } else {
        work()
    };
    records.sort_by_key(|r| (r.n, r.trial));
    Ok(records)
}

pub fn records_to_csv(records: &[SimulationRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n, r.trial, r.min_relaxed, r.min_naive, r.delta_theorem1
        )
        .expect("writing to string");
    }
    out
}

pub fn write_records_csv(records: &[SimulationRecord], path: &Path) -> Result<(), CliError> {
    fs::write(path, records_to_csv(records)).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Per-size means of (min_relaxed, min_naive, delta), in ascending n.
pub fn per_size_means(records: &[SimulationRecord]) -> Vec<(usize, f64, f64, f64)> {
    let mut out: Vec<(usize, f64, f64, f64)> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for r in records {
        match out.last_mut() {
            Some(row) if row.0 == r.n => {
                row.1 += r.min_relaxed;
                row.2 += r.min_naive;
                row.3 += r.delta_theorem1;
                *counts.last_mut().unwrap() += 1;
            }
            _ => {
                out.push((r.n, r.min_relaxed, r.min_naive, r.delta_theorem1));
                counts.push(1);
            }
        }
    }
    for (row, &c) in out.iter_mut().zip(&counts) {
        row.1 /= c as f64;
        row.2 /= c as f64;
        row.3 /= c as f64;
    }
    out
}
