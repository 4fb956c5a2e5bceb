//! First-order solver for the lifted relaxations and certified dual bounds.
//!
//! The problem `min <C, Y>` over `Y = V U V^T`, `U` PSD, `Y` in a polyhedron
//! `P` is split into a PSD block and a polyhedral block joined by `Y = Yhat`:
//!
//! ```text
//! Yhat   = V proj_psd(V^T (Y + L / beta) V) V^T
//! Y      = proj_P(Yhat - (C + L) / beta)
//! L     += gamma * beta * (Y - Yhat)
//! ```
//!
//! Optimality of the `Y` step gives multipliers for the polyhedral
//! constraints; any such multipliers, whatever their accuracy, yield a valid
//! lower bound through [`certify_multipliers`].

mod polyhedron;
mod psd;

use std::io::{self, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::sdp::SdpProblem;
use crate::{Error, Result};

pub use polyhedron::DualMultipliers;
pub use psd::project_psd;

use polyhedron::Polyhedron;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmmParams {
    /// Initial penalty `beta`.
    pub sigma: f64,
    /// Dual step length `gamma`, in `(0, (1 + sqrt 5) / 2)`.
    pub dual_step: f64,
    pub adaptive: bool,
    pub adapt_ratio: f64,
    pub adapt_period: usize,
    pub tol_primal: f64,
    pub tol_dual: f64,
    pub max_iterations: usize,
    /// Inner sweeps of the polyhedral projection when it is not closed-form.
    pub inner_sweeps: usize,
    /// Record residuals every this many iterations (0 disables the log).
    pub log_every: usize,
    /// Compute the certified bound every this many iterations (0 disables).
    pub certify_every: usize,
    /// Stop early once the certified bound exceeds this value.
    pub target_bound: Option<f64>,
}

impl Default for AdmmParams {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            dual_step: 1.0,
            adaptive: true,
            adapt_ratio: 10.0,
            adapt_period: 100,
            tol_primal: 1e-5,
            tol_dual: 1e-5,
            max_iterations: 100_000,
            inner_sweeps: 10,
            log_every: 0,
            certify_every: 0,
            target_bound: None,
        }
    }
}

impl AdmmParams {
    pub fn validate(&self) -> Result<()> {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::invalid("sigma must be positive"));
        }
        if !(self.dual_step > 0.0 && self.dual_step < golden) {
            return Err(Error::invalid("dual_step must lie in (0, 1.618)"));
        }
        if !(self.tol_primal > 0.0 && self.tol_dual > 0.0) {
            return Err(Error::invalid("tolerances must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        if self.adaptive && (self.adapt_period == 0 || self.adapt_ratio <= 1.0) {
            return Err(Error::invalid("adaptive scaling needs period >= 1 and ratio > 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Converged,
    MaxIter,
    /// Stopped early because the certified bound passed the target.
    TargetReached,
    NumericalFailure,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Converged => "converged",
            Self::MaxIter => "max-iter",
            Self::TargetReached => "target-reached",
            Self::NumericalFailure => "numerical-failure",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub objective: f64,
    pub beta: f64,
    pub certified: Option<f64>,
}

/// A dual certificate evaluated on a problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    /// `b^T y + h^T mu`.
    pub raw: f64,
    /// Smallest eigenvalue of the projected slack.
    pub lambda_min: f64,
    /// Bound on the error of `lambda_min`.
    pub eig_error: f64,
    /// `raw + trace_bound * min(0, lambda_min - eig_error)`.
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct AdmmSolution {
    pub status: SolveStatus,
    pub iterations: usize,
    /// `V U V^T`: PSD and on the face.
    pub primal: DMatrix<f64>,
    /// The polyhedral iterate `Y`.
    pub polyhedral: DMatrix<f64>,
    pub dual: DualMultipliers,
    /// `C - A*(y) - G*(mu) - W` in lifted coordinates.
    pub dual_slack: DMatrix<f64>,
    pub objective_primal: f64,
    pub objective_dual_raw: f64,
    pub objective_dual_safe: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub beta: f64,
    pub history: Vec<IterationRecord>,
}

impl AdmmSolution {
    /// CSV log: iteration, residuals, objective, penalty, certified bound.
    pub fn write_log_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "iteration,primal_residual,dual_residual,objective,beta,certified")?;
        for r in &self.history {
            let cert = r.certified.map(|c| format!("{c:.10e}")).unwrap_or_default();
            writeln!(
                out,
                "{},{:.6e},{:.6e},{:.10e},{:.3e},{cert}",
                r.iteration, r.primal_residual, r.dual_residual, r.objective, r.beta
            )?;
        }
        Ok(())
    }
}

/// Runs the splitting method. Eigendecomposition failures surface as
/// errors; divergence yields a solution with status `NumericalFailure`.
pub fn solve(problem: &SdpProblem, params: &AdmmParams) -> Result<AdmmSolution> {
    params.validate()?;
    if problem.equalities.is_empty() {
        return Err(Error::invalid("problem has no equality constraints"));
    }
    if problem.variable_order() < 2 {
        return Err(Error::invalid("PSD variable order must be at least 2"));
    }
    let order = problem.lifted_order();
    let c = problem.cost.to_operator(order);
    let c_norm = c.norm();
    let mut poly = Polyhedron::new(problem, params.inner_sweeps)?;

    let mut beta = params.sigma;
    let mut y = DMatrix::zeros(order, order);
    let mut yhat = DMatrix::zeros(order, order);
    let mut lambda = DMatrix::zeros(order, order);
    let mut history = Vec::new();
    let (mut rp, mut rd) = (f64::INFINITY, f64::INFINITY);
    let mut status = SolveStatus::MaxIter;
    let mut certificate_duals = poly.duals.scaled(beta);
    let mut iterations = 0;

    for it in 1..=params.max_iterations {
        iterations = it;
        yhat = psd_step(problem, &(&y + &lambda * (1.0 / beta)))?;
        let y_old = std::mem::replace(&mut y, poly.project(&(&yhat - (&c + &lambda) * (1.0 / beta))));
        certificate_duals = poly.duals.scaled(beta);
        let diff = &y - &yhat;
        lambda += &diff * (params.dual_step * beta);

        rp = diff.norm() / (1.0 + y.norm());
        rd = beta * (&y - &y_old).norm() / (1.0 + c_norm);
        if !(rp.is_finite() && rd.is_finite()) || lambda.amax() > 1e8 || y.amax() > 1e8 {
            status = SolveStatus::NumericalFailure;
            break;
        }

        let want_cert = params.certify_every > 0 && it % params.certify_every == 0;
        let certified = if want_cert {
            Some(certify_multipliers(problem, &certificate_duals)?.bound)
        } else {
            None
        };
        if params.log_every > 0 && (it % params.log_every == 0 || it == 1) {
            history.push(IterationRecord {
                iteration: it,
                primal_residual: rp,
                dual_residual: rd,
                objective: problem.cost.eval(&yhat),
                beta,
                certified,
            });
        }
        if rp <= params.tol_primal && rd <= params.tol_dual {
            status = SolveStatus::Converged;
            break;
        }
        if let (Some(target), Some(bound)) = (params.target_bound, certified) {
            if bound > target {
                status = SolveStatus::TargetReached;
                break;
            }
        }
        if params.adaptive && it % params.adapt_period == 0 {
            let factor = if rp > params.adapt_ratio * rd {
                2.0
            } else if rd > params.adapt_ratio * rp {
                0.5
            } else {
                1.0
            };
            if factor != 1.0 {
                // Stored projection multipliers are in units of 1 / beta.
                poly.duals.scale(1.0 / factor);
                beta *= factor;
            }
        }
    }

    let cert = certify_multipliers(problem, &certificate_duals)?;
    let dual_slack = slack(problem, &certificate_duals);
    Ok(AdmmSolution {
        status,
        iterations,
        objective_primal: problem.cost.eval(&yhat),
        primal: yhat,
        polyhedral: y,
        dual: certificate_duals,
        dual_slack,
        objective_dual_raw: cert.raw,
        objective_dual_safe: cert.bound,
        primal_residual: rp,
        dual_residual: rd,
        beta,
        history,
    })
}

/// `V proj_psd(V^T M V) V^T`.
fn psd_step(problem: &SdpProblem, m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    match &problem.basis {
        Some(v) => {
            let reduced = v.transpose() * m * v;
            let p = v * psd::psd_factor(&reduced)?;
            Ok(&p * p.transpose())
        }
        None => {
            let p = psd::psd_factor(m)?;
            Ok(&p * p.transpose())
        }
    }
}

/// `C - sum y_a A_a - sum mu_l G_l - W`, with `mu` and `W` clamped to be
/// nonnegative.
fn slack(problem: &SdpProblem, duals: &DualMultipliers) -> DMatrix<f64> {
    let mut s = problem.cost.to_operator(problem.lifted_order());
    for (c, &y) in problem.equalities.iter().zip(&duals.eq) {
        c.form.add_operator_to(&mut s, -y);
    }
    for (c, &mu) in problem.inequalities.iter().zip(&duals.ineq) {
        c.form.add_operator_to(&mut s, -mu.max(0.0));
    }
    for (&(i, j), &w) in problem.sign.iter().zip(&duals.sign) {
        let w = w.max(0.0);
        s[(i, j)] -= w;
        if i != j {
            s[(j, i)] -= w;
        }
    }
    s
}

/// Lower bound on the relaxation's optimum from arbitrary multipliers.
///
/// For feasible `Y = V U V^T` with `trace(U) <= trace_bound`,
/// `<C, Y> = b^T y + h^T mu + <W, Y> + <G*mu, Y> - h^T mu + <V^T S V, U>`,
/// and every term past `b^T y + h^T mu` is bounded below by
/// `trace_bound * min(0, lambda_min(V^T S V))`.
pub fn certify_multipliers(problem: &SdpProblem, duals: &DualMultipliers) -> Result<Certification> {
    if duals.eq.len() != problem.equalities.len()
        || duals.ineq.len() != problem.inequalities.len()
        || duals.sign.len() != problem.sign.len()
    {
        return Err(Error::invalid("multiplier dimensions do not match the problem"));
    }
    let s = slack(problem, duals);
    let projected = match &problem.basis {
        Some(v) => v.transpose() * &s * v,
        None => s,
    };
    let (lambda_min, eig_error) = psd::min_eigenvalue_with_error(&projected)?;
    let raw: f64 = problem.equalities.iter().zip(&duals.eq).map(|(c, &y)| c.rhs * y).sum::<f64>()
        + problem.inequalities.iter().zip(&duals.ineq).map(|(c, &mu)| c.rhs * mu.max(0.0)).sum::<f64>();
    let bound = raw + problem.trace_bound * (lambda_min - eig_error).min(0.0);
    Ok(Certification { raw, lambda_min, eig_error, bound })
}

/// Certified lower bound carried by a solution's multipliers.
pub fn certify_lower_bound(problem: &SdpProblem, solution: &AdmmSolution) -> Result<f64> {
    Ok(certify_multipliers(problem, &solution.dual)?.bound)
}
