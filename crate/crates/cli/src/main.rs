use std::path::{Path, PathBuf};
use std::process;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use bap_cli::{from_core, io, report, sim, CliError};
use bap_core::oracle::certify;
use bap_core::{naive_bounds, relaxed_bounds, solve, theorem1_bounds, BipartiteGraph};

/// Bottleneck assignment solver with certified perturbation bounds.
#[derive(Parser)]
#[command(name = "bap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the bottleneck assignment problem for a cost matrix.
    Solve {
        /// Cost matrix file (.csv or .json)
        #[arg(long)]
        input: PathBuf,
    },
    /// Print allowable perturbation intervals for every edge.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Monte-Carlo check that sampled perturbations inside the bounds
    /// keep the bottleneck edge optimal.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Sweep random fully connected instances and record the minimum
    /// certified perturbation of each method per problem size.
    Simulate {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
        /// Instances per problem size
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Uniform weight range as "low,high"
        #[arg(long, default_value = "0,100")]
        weight_range: WeightRange,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output CSV path
        #[arg(long)]
        output: PathBuf,
        /// Worker threads (0 = rayon default)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    #[value(name = "theorem1")]
    Theorem1,
    Relaxed,
    Naive,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Copy, Clone)]
struct WeightRange {
    low: f64,
    high: f64,
}

impl FromStr for WeightRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (low, high) = s
            .split_once(',')
            .ok_or_else(|| format!("expected \"low,high\", got {s:?}"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number {v:?}"))
        };
        Ok(WeightRange {
            low: parse(low)?,
            high: parse(high)?,
        })
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { input } => cmd_solve(&input),
        Command::Bounds {
            input,
            method,
            format,
        } => cmd_bounds(&input, method, format),
        Command::Verify {
            input,
            method,
            trials,
            seed,
        } => cmd_verify(&input, method, trials, seed),
        Command::Simulate {
            n_min,
            n_max,
            trials,
            weight_range,
            seed,
            output,
            jobs,
        } => cmd_simulate(&sim::SimulationConfig {
            n_min,
            n_max,
            trials_per_size: trials,
            weight_low: weight_range.low,
            weight_high: weight_range.high,
            seed,
            jobs,
        }, &output),
    }
}

fn load(input: &Path) -> Result<BipartiteGraph, CliError> {
    io::read_graph(input)
}

fn compute_bounds(
    g: &BipartiteGraph,
    method: Method,
    path: &str,
) -> Result<bap_core::RobustnessBounds, CliError> {
    let bounds = match method {
        Method::Theorem1 => theorem1_bounds(g),
        Method::Relaxed => relaxed_bounds(g),
        Method::Naive => naive_bounds(g),
    };
    bounds.map_err(|e| from_core(e, path))
}

fn cmd_solve(input: &Path) -> Result<(), CliError> {
    let g = load(input)?;
    let sol = solve(&g).map_err(|e| from_core(e, &input.display().to_string()))?;
    print!("{}", report::render_solution(&g, &sol));
    Ok(())
}

fn cmd_bounds(input: &Path, method: Method, format: Format) -> Result<(), CliError> {
    let g = load(input)?;
    let bounds = compute_bounds(&g, method, &input.display().to_string())?;
    let text = match format {
        Format::Table => report::render_bounds_table(&g, &bounds),
        Format::Csv => report::render_bounds_csv(&bounds),
        Format::Json => {
            let mut s = report::render_bounds_json(&g, &bounds);
            s.push('\n');
            s
        }
    };
    print!("{text}");
    Ok(())
}

fn cmd_verify(input: &Path, method: Method, trials: usize, seed: u64) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let g = load(input)?;
    let path = input.display().to_string();
    let bounds = compute_bounds(&g, method, &path)?;
    let scale = match g.weight_bounds() {
        Some((lo, hi)) if hi > lo => hi - lo,
        _ => 1.0,
    };
    let report_data = certify(&g, &bounds, trials, seed, 1e-6 * scale, 10.0 * scale)
        .map_err(|e| from_core(e, &path))?;
    print!("{}", report::render_certification(&g, &report_data, seed));
    if report_data.violations > 0 {
        return Err(CliError::Violations {
            violations: report_data.violations,
            trials: report_data.trials,
        });
    }
    Ok(())
}

fn cmd_simulate(cfg: &sim::SimulationConfig, output: &Path) -> Result<(), CliError> {
    let records = sim::run_simulation(cfg)?;
    sim::write_records_csv(&records, output)?;
    for (n, relaxed, naive, delta) in sim::per_size_means(&records) {
        println!(
            "n={n} mean_min_relaxed={relaxed:.4} mean_min_naive={naive:.4} mean_delta_theorem1={delta:.4}"
        );
    }
    println!("wrote {} records to {}", records.len(), output.display());
    Ok(())
}
