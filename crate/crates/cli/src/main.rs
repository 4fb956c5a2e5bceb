//! `bandwidth`: instance generation, bandwidth bounds, and table
//! reproduction.

mod certify;
mod output;
mod pipeline;
mod tables;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bandwidth_core::graph::{write_matrix_market, Graph};
use bandwidth_core::heuristics::{bandwidth_density, best_of_seeds, AnnealParams};
use bandwidth_core::partition::{BoundReport, PartitionSpec};
use bandwidth_core::registry::{generators, labelers, schemes};
use bandwidth_core::sdp::NonnegMode;
use bandwidth_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pipeline::{run_spec, RunConfig};

#[derive(Parser)]
#[command(name = "bandwidth", version, about = "Certified lower and heuristic upper bounds on graph bandwidth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Relaxation: full, reduced or slater.
    #[arg(long, default_value = "slater")]
    model: String,
    /// Sign constraints on the lifted matrix: all, band or none.
    #[arg(long, default_value = "all")]
    nonneg: NonnegMode,
    /// Add the nonnegativity of the reconstructed last block (reduced model).
    #[arg(long)]
    prop1: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Solver tolerance 1e-4 and a tenth of the annealing budget.
    #[arg(long)]
    fast: bool,
    /// Stop the solver as soon as the certified bound is positive.
    #[arg(long)]
    early_stop: bool,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
    /// Include wall-clock seconds (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

impl SolverArgs {
    fn config(&self) -> RunConfig {
        let mut c = RunConfig::new(&self.model, self.nonneg, self.prop1, self.seed, self.fast);
        c.early_stop = self.early_stop;
        c.timings = self.timings;
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in Matrix Market format.
    Gen {
        /// torus, torus-ham, hypercube or hamming.
        family: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bound the bandwidth of a graph through partition specs.
    Bound {
        graph: PathBuf,
        /// Block sizes, e.g. 16,8,8,17. Repeatable; each must sum to n.
        #[arg(long, value_delimiter = ',', num_args = 1, action = clap::ArgAction::Append)]
        spec: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Generate the block sizes from a named scheme instead.
        #[arg(long, conflicts_with = "spec")]
        scheme: Option<String>,
        #[arg(long, value_delimiter = ',')]
        scheme_params: Vec<usize>,
        /// CSV log of solver iterations (single spec only).
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run a labeling heuristic.
    Heuristic {
        graph: PathBuf,
        #[arg(long, default_value = "anneal")]
        labeler: String,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
    },
    /// Reproduce a results table: T7, T8910, TH, summary, hamming or literature.
    Table {
        id: String,
        /// Restrict to these instance labels (e.g. H5).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Block counts for the literature table, e.g. 3..6 or 3,4.
        #[arg(long, default_value = "3..6")]
        k: String,
        /// Instance files for the literature table.
        #[arg(long)]
        file: Vec<PathBuf>,
        /// Directory searched for literature instances by name.
        #[arg(long)]
        data_dir: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Re-check every bound report found in a JSON file against a graph.
    Certify { graph: PathBuf, report: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Returns `Ok(false)` when some spec failed but the run completed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Gen { family, params, output } => {
            let g = generators().get(&family)?.generate(&params)?;
            match output {
                Some(path) => write_matrix_market(&g, std::fs::File::create(path)?)?,
                None => write_matrix_market(&g, std::io::stdout().lock())?,
            }
            Ok(true)
        }
        Command::Bound { graph, spec, r, scheme, scheme_params, log, solver } => {
            let g = Graph::load(&graph)?;
            let specs = bound_specs(&g, &spec, r, scheme.as_deref(), &scheme_params)?;
            if log.is_some() && specs.len() != 1 {
                return Err(Error::InvalidParameter("--log needs exactly one spec".into()));
            }
            let config = solver.config();
            let reports = match &log {
                Some(path) => vec![run_spec(&g, &specs[0], &config, Some(path))],
                None => pipeline::run_specs(&g, &specs, &config),
            };
            for r in reports.iter().filter(|r| r.failed()) {
                log::warn!("{} {}: {}", r.graph, r.spec.label(), r.error.as_deref().unwrap_or(""));
            }
            emit(&match solver.output {
                Format::Json => json(&reports)?,
                Format::Csv => output::spec_reports_csv(&reports, solver.timings),
            })?;
            Ok(!reports.iter().any(|r| r.failed()))
        }
        Command::Heuristic { graph, labeler, seeds } => {
            let g = Graph::load(&graph)?;
            let registry = labelers();
            let strategy = registry.get(&labeler)?;
            let (seed, phi, width) = best_of_seeds(&seeds, |seed| {
                strategy.label(&g, &AnnealParams { seed, ..AnnealParams::default() })
            })?;
            #[derive(Serialize)]
            struct Out {
                graph: String,
                n: usize,
                edges: usize,
                labeler: String,
                seed: u64,
                width: usize,
                density: Option<f64>,
                upper_bound: BoundReport,
            }
            emit(&json(&Out {
                graph: g.name().to_string(),
                n: g.n(),
                edges: g.edge_count(),
                labeler,
                seed,
                width,
                density: bandwidth_density(&g, width).ok(),
                upper_bound: BoundReport::from_labeling(&g, &phi),
            })?)?;
            Ok(true)
        }
        Command::Table { id, only, k, file, data_dir, solver } => table(&id, &only, &k, &file, data_dir.as_deref(), &solver),
        Command::Certify { graph, report } => {
            let g = Graph::load(&graph)?;
            let text = std::fs::read_to_string(&report)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let checks = certify::check_all(&g, &value)?;
            emit(&json(&checks)?)?;
            Ok(checks.iter().all(|c| c.valid))
        }
    }
}

fn bound_specs(
    g: &Graph,
    flat: &[usize],
    r: usize,
    scheme: Option<&str>,
    scheme_params: &[usize],
) -> Result<Vec<PartitionSpec>> {
    if let Some(name) = scheme {
        let spec = schemes().get(name)?.build(g.n(), scheme_params)?;
        return Ok(vec![spec]);
    }
    if flat.is_empty() {
        return Err(Error::InvalidParameter("give --spec or --scheme".into()));
    }
    split_specs(flat, g.n())?.into_iter().map(|m| PartitionSpec::new(m, r)).collect()
}

/// Splits concatenated `--spec` values into specs that each sum to `n`.
fn split_specs(flat: &[usize], n: usize) -> Result<Vec<Vec<usize>>> {
    let mut specs = Vec::new();
    let mut current = Vec::new();
    let mut sum = 0;
    for &v in flat {
        current.push(v);
        sum += v;
        if sum == n {
            specs.push(std::mem::take(&mut current));
            sum = 0;
        } else if sum > n {
            return Err(Error::InvalidParameter(format!("spec {current:?} exceeds n = {n}")));
        }
    }
    if !current.is_empty() {
        return Err(Error::InvalidParameter(format!("spec {current:?} sums to {sum}, need n = {n}")));
    }
    Ok(specs)
}

fn parse_ks(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("--k `{text}` (expected a..b or a,b,...)"));
    let ks: Vec<usize> = match text.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            (a..=b).collect()
        }
        None => text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?,
    };
    if ks.is_empty() || ks.iter().any(|&k| k < 3) {
        return Err(bad());
    }
    Ok(ks)
}

fn table(id: &str, only: &[String], k: &str, files: &[PathBuf], dir: Option<&Path>, solver: &SolverArgs) -> Result<bool> {
    let config = solver.config();
    match id {
        "T7" | "T8910" | "TH" | "hamming" => {
            let rows = tables::run_partition_table(id, only, &config)?;
            emit(&match solver.output {
                Format::Json => json(&rows)?,
                Format::Csv => output::partition_rows_csv(&rows, solver.timings),
            })?;
            Ok(!rows.iter().any(|r| r.report.failed()))
        }
        "summary" => {
            let rows = tables::run_summary(only, &config)?;
            emit(&match solver.output {
                Format::Json => json(&rows)?,
                Format::Csv => output::summary_csv(&rows),
            })?;
            Ok(rows.iter().all(|r| r.failures == 0))
        }
        "literature" => {
            let ks = parse_ks(k)?;
            if files.is_empty() && dir.is_none() {
                return Err(Error::InvalidParameter("literature table needs --file or --data-dir".into()));
            }
            let (instances, missing) = tables::literature_instances(files, dir)?;
            for name in missing {
                log::warn!("instance {name} not found, skipped");
            }
            let mut rows = Vec::new();
            for (name, r6, path) in instances {
                if !only.is_empty() && !only.iter().any(|o| o.eq_ignore_ascii_case(&name)) {
                    continue;
                }
                let g = Graph::load(&path)?;
                rows.push(tables::run_literature(&name, &g, r6, &ks, &config)?);
            }
            emit(&match solver.output {
                Format::Json => json(&rows)?,
                Format::Csv => output::literature_csv(&rows, &ks),
            })?;
            Ok(rows.iter().all(|r| r.failures == 0))
        }
        other => Err(Error::UnknownStrategy {
            kind: "table",
            name: other.to_string(),
            available: tables::TABLE_IDS.join(", "),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_split_at_n() {
        assert_eq!(
            split_specs(&[16, 8, 8, 17, 15, 9, 9, 16], 49).unwrap(),
            vec![vec![16, 8, 8, 17], vec![15, 9, 9, 16]]
        );
        assert!(split_specs(&[16, 8, 8], 49).is_err());
        assert!(split_specs(&[40, 20], 49).is_err());
    }

    #[test]
    fn k_ranges() {
        assert_eq!(parse_ks("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_ks("4,5").unwrap(), vec![4, 5]);
        assert!(parse_ks("2..4").is_err());
        assert!(parse_ks("x").is_err());
    }
}
