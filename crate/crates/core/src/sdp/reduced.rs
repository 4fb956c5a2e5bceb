use nalgebra::DMatrix;

use crate::graph::Graph;
use crate::partition::PartitionSpec;
use crate::{Error, Result};

use super::{
    all_entries, band_entries, block_equalities, cost_form, finalize_sign, BlockLayout, Constraint, FormBuilder,
    LinearForm, NonnegMode, SdpProblem,
};

/// Expresses entries of the full lifted matrix as linear functionals of the
/// reduced one, which keeps blocks `0..k-1` and drops the last.
///
/// With `K` the dropped block and `c` the reduced corner:
///
/// ```text
/// x_K(a)      = Z_cc - sum_b x_b(a)
/// (X_uK)_ab   = x_u(a) - sum_{l<K} (X_ul)_ab
/// (X_K)_ab    = x_K(a) - sum_{l<K} (X_lK)_ba
/// ```
#[derive(Debug, Clone, Copy)]
pub struct ReducedMap {
    n: usize,
    k: usize,
}

impl ReducedMap {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, k }
    }

    pub fn reduced_layout(&self) -> BlockLayout {
        BlockLayout { n: self.n, blocks: self.k - 1 }
    }

    pub fn full_layout(&self) -> BlockLayout {
        BlockLayout { n: self.n, blocks: self.k }
    }

    fn last(&self) -> usize {
        self.k - 1
    }

    /// Reduced index for a kept block, or the reduced corner for `None`.
    fn kept(&self, slot: Option<(usize, usize)>) -> usize {
        let layout = self.reduced_layout();
        slot.map_or(layout.corner(), |(b, a)| layout.index(b, a))
    }

    /// `x_b(a)` for any block.
    pub fn border(&self, block: usize, a: usize) -> LinearForm {
        if block < self.last() {
            return LinearForm::entry(self.kept(Some((block, a))), self.kept(None));
        }
        let mut f = FormBuilder::new();
        f.add(self.kept(None), self.kept(None), 1.0);
        for b in 0..self.last() {
            f.add(self.kept(Some((b, a))), self.kept(None), -1.0);
        }
        f.build()
    }

    /// `(X_uv)_ab` for any pair of blocks.
    pub fn block_entry(&self, u: usize, a: usize, v: usize, b: usize) -> LinearForm {
        let last = self.last();
        match (u == last, v == last) {
            (false, false) => LinearForm::entry(self.kept(Some((u, a))), self.kept(Some((v, b)))),
            (false, true) => self.last_column(u, a, b),
            (true, false) => self.last_column(v, b, a),
            (true, true) => {
                let mut f = FormBuilder::new();
                f.add_form(&self.border(last, a), 1.0);
                for l in 0..last {
                    f.add_form(&self.last_column(l, b, a), -1.0);
                }
                f.build()
            }
        }
    }

    /// `(X_uK)_ab` for `u < K`.
    fn last_column(&self, u: usize, a: usize, b: usize) -> LinearForm {
        let mut f = FormBuilder::new();
        f.add_form(&self.border(u, a), 1.0);
        for l in 0..self.last() {
            f.add(self.kept(Some((u, a))), self.kept(Some((l, b))), -1.0);
        }
        f.build()
    }

    /// Full-matrix entry `(p, q)` as a functional of the reduced matrix.
    pub fn full_entry(&self, p: usize, q: usize) -> LinearForm {
        let full = self.full_layout();
        let slot = |i: usize| (i < full.corner()).then(|| (i / self.n, i % self.n));
        match (slot(p), slot(q)) {
            (None, None) => LinearForm::entry(self.kept(None), self.kept(None)),
            (Some((u, a)), None) | (None, Some((u, a))) => self.border(u, a),
            (Some((u, a)), Some((v, b))) => self.block_entry(u, a, v, b),
        }
    }
}

/// Relaxation over the lifted matrix with the last block row removed,
/// order `n (k - 1) + 1`.
///
/// `nonneg` acts on the reduced matrix. `prop1` adds inequalities stating
/// that the reconstructed blocks `X_K` (off-diagonal) and `X_uK`
/// (off-diagonal) are nonnegative; with `NonnegMode::All` this matches the
/// full model under full nonnegativity.
pub fn build_reduced_model(g: &Graph, spec: &PartitionSpec, nonneg: NonnegMode, prop1: bool) -> Result<SdpProblem> {
    spec.check_n(g.n())?;
    let (n, k) = (g.n(), spec.k());
    let map = ReducedMap::new(n, k);
    let layout = map.reduced_layout();
    let cost = cost_form(g, spec, |u, a, v, b| map.block_entry(u, a, v, b));
    let equalities = block_equalities(spec, layout);
    let sign = match nonneg {
        NonnegMode::None => Vec::new(),
        NonnegMode::Band => band_entries(spec, layout),
        NonnegMode::All => all_entries(layout.order()),
    };
    let mut inequalities = Vec::new();
    if prop1 {
        let last = k - 1;
        for a in 0..n {
            for b in 0..a {
                inequalities.push(Constraint::new(map.block_entry(last, a, last, b), 0.0));
            }
        }
        for u in 0..last {
            for a in 0..n {
                for b in (0..n).filter(|&b| b != a) {
                    inequalities.push(Constraint::new(map.block_entry(u, a, last, b), 0.0));
                }
            }
        }
    }
    Ok(SdpProblem {
        model: "reduced".into(),
        spec: spec.clone(),
        layout,
        cost,
        sign: finalize_sign(sign, &equalities),
        equalities,
        inequalities,
        basis: None,
        trace_bound: (n - spec.m()[k - 1]) as f64 + 1.0,
    })
}

/// Rebuilds the full lifted matrix from a reduced one.
pub fn reconstruct_full_from_reduced(z: &DMatrix<f64>, spec: &PartitionSpec) -> Result<DMatrix<f64>> {
    let k = spec.k();
    let n = spec.n();
    let map = ReducedMap::new(n, k);
    let order = map.reduced_layout().order();
    if z.nrows() != order || z.ncols() != order {
        return Err(Error::invalid(format!(
            "reduced matrix is {}x{}, expected order {order}",
            z.nrows(),
            z.ncols()
        )));
    }
    let full = map.full_layout();
    let c = full.corner();
    let (last, kc) = (k - 1, map.kept(None));
    let border = |u: usize, a: usize| -> f64 {
        if u < last {
            z[(u * n + a, kc)]
        } else {
            z[(kc, kc)] - (0..last).map(|b| z[(b * n + a, kc)]).sum::<f64>()
        }
    };
    let last_column = |u: usize, a: usize, b: usize| -> f64 {
        border(u, a) - (0..last).map(|l| z[(u * n + a, l * n + b)]).sum::<f64>()
    };

    let mut out = DMatrix::zeros(full.order(), full.order());
    out.view_mut((0, 0), (order - 1, order - 1))
        .copy_from(&z.view((0, 0), (order - 1, order - 1)));
    out[(c, c)] = z[(kc, kc)];
    for u in 0..k {
        for a in 0..n {
            let v = border(u, a);
            out[(u * n + a, c)] = v;
            out[(c, u * n + a)] = v;
        }
    }
    for u in 0..last {
        for a in 0..n {
            for b in 0..n {
                let v = last_column(u, a, b);
                out[(u * n + a, last * n + b)] = v;
                out[(last * n + b, u * n + a)] = v;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            out[(last * n + a, last * n + b)] = border(last, a) - (0..last).map(|l| last_column(l, b, a)).sum::<f64>();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{basic_partition, minpart_objective, PartitionMatrix};
    use crate::sdp::lift_partition;

    fn random_symmetric(order: usize, seed: u64) -> DMatrix<f64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = DMatrix::from_fn(order, order, |_, _| rng.gen_range(-1.0..1.0));
        &m + m.transpose()
    }

    #[test]
    fn reconstruction_reproduces_exact_lift() {
        let spec = PartitionSpec::new(vec![2, 3, 1, 2], 1).unwrap();
        let x = PartitionMatrix::new(4, vec![1, 0, 3, 1, 2, 0, 1, 3]).unwrap();
        let reduced = lift_partition(&x, 3);
        let full = reconstruct_full_from_reduced(&reduced, &spec).unwrap();
        assert_eq!(full, lift_partition(&x, 4));
    }

    #[test]
    fn forms_agree_with_numeric_reconstruction() {
        let spec = PartitionSpec::new(vec![2, 2, 1], 1).unwrap();
        let map = ReducedMap::new(5, 3);
        let z = random_symmetric(11, 3);
        let full = reconstruct_full_from_reduced(&z, &spec).unwrap();
        for p in 0..16 {
            for q in 0..16 {
                let f = map.full_entry(p, q);
                assert!((f.eval(&z) - full[(p, q)]).abs() < 1e-12, "entry ({p}, {q})");
            }
        }
    }

    #[test]
    fn lifted_partition_is_feasible_including_prop1_rows() {
        let g = Graph::cycle(8).unwrap();
        let spec = PartitionSpec::new(vec![2, 2, 2, 2], 1).unwrap();
        let p = build_reduced_model(&g, &spec, NonnegMode::All, true).unwrap();
        assert_eq!(p.lifted_order(), 25);
        assert_eq!(p.trace_bound, 7.0);
        assert_eq!(p.inequalities.len(), 8 * 7 / 2 + 3 * 8 * 7);
        for blocks in [vec![0, 0, 1, 1, 2, 2, 3, 3], vec![3, 1, 0, 2, 1, 3, 0, 2]] {
            let x = PartitionMatrix::new(4, blocks).unwrap();
            let z = lift_partition(&x, 3);
            assert!(p.max_violation(&z) < 1e-12);
            assert_eq!(p.objective(&z), minpart_objective(&g, &x, 1) as f64);
        }
    }

    #[test]
    fn k3_reduced_order_is_2n_plus_1() {
        let g = Graph::path(7).unwrap();
        let spec = PartitionSpec::new(vec![2, 3, 2], 1).unwrap();
        let p = build_reduced_model(&g, &spec, NonnegMode::None, false).unwrap();
        assert_eq!(p.lifted_order(), 15);
        let x = basic_partition(&spec);
        assert_eq!(p.objective(&lift_partition(&x, 2)), minpart_objective(&g, &x, 1) as f64);
    }
}
