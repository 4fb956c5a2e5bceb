//! Lifted semidefinite relaxations of the minimal partition problem.
//!
//! A partition matrix `X = [x_1 .. x_k]` is lifted to
//! `Z = [vec(X); 1] [vec(X); 1]^T`, whose blocks are `X_ij = x_i x_j^T`.
//! Three relaxations of the same feasible set are built here:
//!
//! * `full`: `Z` itself, order `n k + 1`;
//! * `reduced`: the last block row removed, order `n (k - 1) + 1`;
//! * `slater`: `Z = W U W^T` with `W` an orthonormal basis of the face
//!   containing every feasible `Z`, so `U` has order `(k - 1)(n - 1) + 1`.

mod form;
mod full;
mod lift;
mod problem;
mod reduced;
mod slater;

use crate::graph::Graph;
use crate::partition::PartitionSpec;
use crate::Result;

pub use form::{FormBuilder, LinearForm};
pub use full::build_full_model;
pub use lift::{lift_partition, lifted_vector};
pub use problem::{BlockLayout, Constraint, ModelOptions, NonnegMode, SdpProblem};
pub use reduced::{build_reduced_model, reconstruct_full_from_reduced, ReducedMap};
pub use slater::{build_slater_model, nullspace_basis, slater_basis};

/// A named SDP relaxation builder.
pub trait Relaxation: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, g: &Graph, spec: &PartitionSpec, options: &ModelOptions) -> Result<SdpProblem>;
}

pub(crate) struct FullModel;
pub(crate) struct ReducedModel;
pub(crate) struct SlaterModel;

impl Relaxation for FullModel {
    fn name(&self) -> &'static str {
        "full"
    }

    fn build(&self, g: &Graph, spec: &PartitionSpec, options: &ModelOptions) -> Result<SdpProblem> {
        build_full_model(g, spec, options.nonneg)
    }
}

impl Relaxation for ReducedModel {
    fn name(&self) -> &'static str {
        "reduced"
    }

    fn build(&self, g: &Graph, spec: &PartitionSpec, options: &ModelOptions) -> Result<SdpProblem> {
        build_reduced_model(g, spec, options.nonneg, options.prop1)
    }
}

impl Relaxation for SlaterModel {
    fn name(&self) -> &'static str {
        "slater"
    }

    fn build(&self, g: &Graph, spec: &PartitionSpec, options: &ModelOptions) -> Result<SdpProblem> {
        build_slater_model(g, spec, options.nonneg)
    }
}

/// `sum_{far u < v} <A, X_uv>` where `entry(u, a, v, b)` yields `(X_uv)_ab`.
fn cost_form(g: &Graph, spec: &PartitionSpec, mut entry: impl FnMut(usize, usize, usize, usize) -> LinearForm) -> LinearForm {
    let k = spec.k();
    let mut cost = FormBuilder::new();
    for u in 0..k {
        for v in (u + spec.r() + 1)..k {
            for &(a, b) in g.edges() {
                cost.add_form(&entry(u, a, v, b), 1.0);
                cost.add_form(&entry(u, b, v, a), 1.0);
            }
        }
    }
    cost.build()
}

/// Equalities for the first `layout.blocks` blocks: diagonal equals border,
/// zero diagonals of off-diagonal blocks, traces, block sums, pair sums and
/// the corner.
fn block_equalities(spec: &PartitionSpec, layout: BlockLayout) -> Vec<Constraint> {
    let (n, blocks, c) = (layout.n, layout.blocks, layout.corner());
    let m: Vec<f64> = spec.m().iter().map(|&v| v as f64).collect();
    let mut out = Vec::new();
    for i in 0..blocks {
        for a in 0..n {
            let p = layout.index(i, a);
            let mut f = FormBuilder::new();
            f.add(p, p, 1.0).add(p, c, -1.0);
            out.push(Constraint::new(f.build(), 0.0));
        }
    }
    for i in 0..blocks {
        for j in (i + 1)..blocks {
            for a in 0..n {
                out.push(Constraint::new(LinearForm::entry(layout.index(i, a), layout.index(j, a)), 0.0));
            }
        }
    }
    for i in 0..blocks {
        let mut f = FormBuilder::new();
        for a in 0..n {
            f.add(layout.index(i, a), layout.index(i, a), 1.0);
        }
        out.push(Constraint::new(f.build(), m[i]));
    }
    for i in 0..blocks {
        let mut f = FormBuilder::new();
        for a in 0..n {
            for b in a..n {
                f.add(layout.index(i, a), layout.index(i, b), if a == b { 1.0 } else { 2.0 });
            }
        }
        out.push(Constraint::new(f.build(), m[i] * m[i]));
    }
    for i in 0..blocks {
        for j in (i + 1)..blocks {
            let mut f = FormBuilder::new();
            for a in 0..n {
                for b in 0..n {
                    f.add(layout.index(i, a), layout.index(j, b), 2.0);
                }
            }
            out.push(Constraint::new(f.build(), 2.0 * m[i] * m[j]));
        }
    }
    out.push(Constraint::new(LinearForm::entry(c, c), 1.0));
    out
}

/// Upper entries of the far blocks `X_uv`, `u < v`, within the layout.
fn band_entries(spec: &PartitionSpec, layout: BlockLayout) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..layout.blocks {
        for v in (u + spec.r() + 1)..layout.blocks {
            for a in 0..layout.n {
                for b in 0..layout.n {
                    out.push((layout.index(u, a), layout.index(v, b)));
                }
            }
        }
    }
    out
}

fn all_entries(order: usize) -> Vec<(usize, usize)> {
    (0..order).flat_map(|j| (0..=j).map(move |i| (i, j))).collect()
}

/// Drops sign constraints on entries already pinned by single-entry
/// equalities, and sorts the rest.
fn finalize_sign(mut sign: Vec<(usize, usize)>, equalities: &[Constraint]) -> Vec<(usize, usize)> {
    let pinned: std::collections::HashSet<(usize, usize)> =
        equalities.iter().filter_map(|c| c.form.single_entry()).map(|(i, j, _)| (i, j)).collect();
    sign.retain(|e| !pinned.contains(e));
    sign.sort_unstable();
    sign.dedup();
    sign
}
