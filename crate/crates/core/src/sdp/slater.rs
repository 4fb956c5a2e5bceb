use nalgebra::{DMatrix, SymmetricEigen};

use crate::graph::Graph;
use crate::partition::PartitionSpec;
use crate::{Error, Result};

use super::{
    all_entries, band_entries, cost_form, finalize_sign, BlockLayout, Constraint, LinearForm,
    NonnegMode, SdpProblem,
};

/// The `(n k + 1) x (n + k)` matrix whose columns every feasible lifted
/// matrix annihilates: `k` block indicators with `-m_i` in the corner, then
/// `n` stacked identities with `-1` in the corner.
pub fn nullspace_basis(spec: &PartitionSpec) -> DMatrix<f64> {
    let (n, k) = (spec.n(), spec.k());
    let corner = n * k;
    let mut out = DMatrix::zeros(corner + 1, n + k);
    for (i, &m) in spec.m().iter().enumerate() {
        for a in 0..n {
            out[(i * n + a, i)] = 1.0;
        }
        out[(corner, i)] = -(m as f64);
    }
    for a in 0..n {
        for i in 0..k {
            out[(i * n + a, k + a)] = 1.0;
        }
        out[(corner, k + a)] = -1.0;
    }
    out
}

/// Orthonormal basis of the orthogonal complement of [`nullspace_basis`],
/// with `(k - 1)(n - 1) + 1` columns. Each column is signed so that its
/// first entry of magnitude above `1e-9` is positive.
pub fn slater_basis(spec: &PartitionSpec) -> Result<DMatrix<f64>> {
    let (n, k) = (spec.n(), spec.k());
    let null = nullspace_basis(spec);
    let gram = &null * null.transpose();
    let scale = gram.norm().max(1.0);
    let eig = SymmetricEigen::try_new(gram, 1e-14 * scale, 0)
        .ok_or_else(|| Error::Numerical("eigendecomposition of the nullspace Gram matrix failed".into()))?;
    let expected = (k - 1) * (n - 1) + 1;
    let mut keep: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    keep.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    keep.truncate(expected);
    let tol = 1e-8 * scale;
    if keep.iter().any(|&i| eig.eigenvalues[i] > tol) {
        return Err(Error::Numerical("nullspace matrix has unexpected rank".into()));
    }
    keep.sort_unstable();
    let mut out = DMatrix::zeros(n * k + 1, expected);
    for (col, &i) in keep.iter().enumerate() {
        let mut v = eig.eigenvectors.column(i).into_owned();
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-9) {
            if *first < 0.0 {
                v.neg_mut();
            }
        }
        out.set_column(col, &v);
    }
    Ok(out)
}

/// Relaxation over `U`, with `Z = W U W^T` for the basis `W` of
/// [`slater_basis`]. On that face the diagonal, trace and sum equalities
/// hold automatically, so only the zero diagonals of off-diagonal blocks and
/// the corner remain. Cost, equalities and sign constraints are stated on
/// `Z`.
pub fn build_slater_model(g: &Graph, spec: &PartitionSpec, nonneg: NonnegMode) -> Result<SdpProblem> {
    spec.check_n(g.n())?;
    let layout = BlockLayout { n: g.n(), blocks: spec.k() };
    let basis = slater_basis(spec)?;
    let cost = cost_form(g, spec, |u, a, v, b| LinearForm::entry(layout.index(u, a), layout.index(v, b)));
    let (n, k) = (layout.n, layout.blocks);
    let mut equalities = Vec::with_capacity(k * (k - 1) / 2 * n + 1);
    for i in 0..k {
        for j in (i + 1)..k {
            for a in 0..n {
                equalities.push(Constraint::new(LinearForm::entry(layout.index(i, a), layout.index(j, a)), 0.0));
            }
        }
    }
    equalities.push(Constraint::new(LinearForm::entry(layout.corner(), layout.corner()), 1.0));
    let sign = match nonneg {
        NonnegMode::None => Vec::new(),
        NonnegMode::Band => band_entries(spec, layout),
        NonnegMode::All => all_entries(layout.order()),
    };
    Ok(SdpProblem {
        model: "slater".into(),
        spec: spec.clone(),
        layout,
        cost,
        sign: finalize_sign(sign, &equalities),
        equalities,
        inequalities: Vec::new(),
        basis: Some(basis),
        trace_bound: g.n() as f64 + 1.0,
    })
}
