use std::path::Path;
use std::time::Instant;

use bandwidth_core::admm::{solve, AdmmParams, SolveStatus};
use bandwidth_core::graph::Graph;
use bandwidth_core::heuristics::{sa_minpart, AnnealParams};
use bandwidth_core::partition::{
    infer_bandwidth_bound, upper_bound_from_partition, BoundReport, PartitionSpec, DEFAULT_SAFETY,
};
use bandwidth_core::registry::relaxations;
use bandwidth_core::sdp::{ModelOptions, NonnegMode};
use serde::Serialize;

/// Solver and heuristic settings shared by every spec of a run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: String,
    pub options: ModelOptions,
    pub admm: AdmmParams,
    pub anneal: AnnealParams,
    /// Stop the solver once the certified bound clears the safety margin.
    pub early_stop: bool,
    pub timings: bool,
    /// Annealing budget divided by 10.
    pub fast: bool,
}

impl RunConfig {
    pub fn new(model: &str, nonneg: NonnegMode, prop1: bool, seed: u64, fast: bool) -> Self {
        let mut admm = AdmmParams::default();
        if fast {
            admm.tol_primal = 1e-4;
            admm.tol_dual = 1e-4;
        }
        let anneal = AnnealParams { seed, ..AnnealParams::default() };
        Self {
            model: model.to_string(),
            options: ModelOptions { nonneg, prop1 },
            admm,
            anneal,
            early_stop: false,
            timings: false,
            fast,
        }
    }

    /// Moves per temperature for a graph on `n` vertices.
    pub fn anneal_for(&self, n: usize) -> AnnealParams {
        let mut p = self.anneal.clone();
        if self.fast && p.steps_per_temp.is_none() {
            p.steps_per_temp = Some((5 * n).max(1));
        }
        p
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SdpSummary {
    pub status: String,
    pub iterations: usize,
    /// Solver objective: approximate, not a bound.
    pub objective_approx: f64,
    /// Certified lower bound on `minPart`.
    pub certified: f64,
}

/// Everything computed for one graph and one partition spec.
#[derive(Debug, Clone, Serialize)]
pub struct SpecReport {
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub spec: PartitionSpec,
    pub model: String,
    pub nonneg: NonnegMode,
    pub prop1: bool,
    /// `minPart` value of the best partition found.
    pub ub: usize,
    /// Certified lower bound on `minPart`.
    pub lb: f64,
    pub sdp: Option<SdpSummary>,
    pub lower_bound: Option<BoundReport>,
    pub upper_bound: Option<BoundReport>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl SpecReport {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }

    pub fn bdw_geq(&self) -> Option<usize> {
        self.lower_bound.as_ref().map(|b| b.value)
    }
}

/// Heuristic upper bound, certified SDP lower bound, and the bandwidth
/// bounds they imply. Solver failures are recorded in the report.
pub fn run_spec(g: &Graph, spec: &PartitionSpec, config: &RunConfig, log: Option<&Path>) -> SpecReport {
    let start = Instant::now();
    let mut report = SpecReport {
        graph: g.name().to_string(),
        n: g.n(),
        edges: g.edge_count(),
        spec: spec.clone(),
        model: config.model.clone(),
        nonneg: config.options.nonneg,
        prop1: config.options.prop1,
        ub: 0,
        lb: 0.0,
        sdp: None,
        lower_bound: None,
        upper_bound: None,
        error: None,
        seconds: None,
    };
    if let Err(e) = fill(&mut report, g, spec, config, log) {
        report.error = Some(e.to_string());
    }
    if config.timings {
        report.seconds = Some(start.elapsed().as_secs_f64());
    }
    report
}

fn fill(
    report: &mut SpecReport,
    g: &Graph,
    spec: &PartitionSpec,
    config: &RunConfig,
    log: Option<&Path>,
) -> bandwidth_core::Result<()> {
    spec.check_n(g.n())?;
    let (x, ub) = sa_minpart(g, spec, &config.anneal_for(g.n()))?;
    report.ub = ub;
    report.upper_bound = upper_bound_from_partition(g, spec, &x);
    if ub == 0 {
        // minPart >= 0 always, so the relaxation cannot say more.
        return Ok(());
    }
    let problem = relaxations().get(&config.model)?.build(g, spec, &config.options)?;
    let mut params = config.admm.clone();
    if config.early_stop {
        params.target_bound = Some(DEFAULT_SAFETY);
        if params.certify_every == 0 {
            params.certify_every = 100;
        }
    }
    if log.is_some() && params.log_every == 0 {
        params.log_every = 10;
    }
    let sol = solve(&problem, &params)?;
    if let Some(path) = log {
        sol.write_log_csv(std::fs::File::create(path)?)?;
    }
    report.lb = sol.objective_dual_safe;
    report.sdp = Some(SdpSummary {
        status: sol.status.to_string(),
        iterations: sol.iterations,
        objective_approx: sol.objective_primal,
        certified: sol.objective_dual_safe,
    });
    if sol.status == SolveStatus::NumericalFailure {
        return Err(bandwidth_core::Error::Numerical(format!(
            "solver diverged after {} iterations",
            sol.iterations
        )));
    }
    report.lower_bound = infer_bandwidth_bound(spec, sol.objective_dual_safe, DEFAULT_SAFETY, true, &config.model);
    Ok(())
}

/// Runs every spec, in parallel, returning reports in input order.
pub fn run_specs(g: &Graph, specs: &[PartitionSpec], config: &RunConfig) -> Vec<SpecReport> {
    use rayon::prelude::*;
    specs.par_iter().map(|s| run_spec(g, s, config, None)).collect()
}
