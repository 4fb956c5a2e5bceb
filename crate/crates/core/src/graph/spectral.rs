//! Laplacian eigenvalue bound `bdw >= ceil(n * lambda_2 / lambda_n) - 1`.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::strict_lower_bound;

use super::Graph;

/// Relative residual accepted from the dense eigensolver.
const EIG_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub n: usize,
    /// Second-smallest Laplacian eigenvalue.
    pub lambda2: f64,
    /// Largest Laplacian eigenvalue.
    pub lambda_max: f64,
}

pub fn spectral_summary(g: &Graph) -> Result<SpectralSummary> {
    let n = g.n();
    if n == 1 {
        return Ok(SpectralSummary { n, lambda2: 0.0, lambda_max: 0.0 });
    }
    let l = g.laplacian();
    let norm = l.norm().max(1.0);
    let eig = SymmetricEigen::new(l.clone());
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(idx);
        let residual = (&l * v - v * lambda).norm();
        if !residual.is_finite() || residual > EIG_RESIDUAL_TOL * norm {
            return Err(Error::Numerical(format!(
                "Laplacian eigenpair residual {residual:.3e} exceeds tolerance"
            )));
        }
    }
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    // Laplacians are PSD; clamp round-off below zero.
    let lambda2 = values[1].max(0.0);
    let lambda_max = values[n - 1].max(0.0);
    Ok(SpectralSummary { n, lambda2, lambda_max })
}

/// `n * lambda_2 / lambda_n` of the combinatorial Laplacian, or 0 for
/// disconnected (including edgeless) graphs.
pub fn spectral_lower_bound(g: &Graph) -> Result<f64> {
    if g.edge_count() == 0 || !g.is_connected() {
        return Ok(0.0);
    }
    let s = spectral_summary(g)?;
    Ok(s.n as f64 * s.lambda2 / s.lambda_max)
}

/// Integer bandwidth bound implied by [`spectral_lower_bound`]:
/// `bdw > value - 1`, rounded with the crate-wide strictness convention.
pub fn spectral_bandwidth_bound(g: &Graph) -> Result<usize> {
    let value = spectral_lower_bound(g)?;
    if value <= 0.0 {
        return Ok(0);
    }
    Ok(strict_lower_bound(value - 1.0).max(0) as usize)
}
