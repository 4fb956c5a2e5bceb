use crate::graph::Graph;
use crate::partition::PartitionSpec;
use crate::Result;

use super::{
    all_entries, band_entries, block_equalities, cost_form, finalize_sign, BlockLayout, LinearForm, NonnegMode,
    SdpProblem,
};

/// Relaxation over the full lifted matrix of order `n k + 1`.
pub fn build_full_model(g: &Graph, spec: &PartitionSpec, nonneg: NonnegMode) -> Result<SdpProblem> {
    spec.check_n(g.n())?;
    let layout = BlockLayout { n: g.n(), blocks: spec.k() };
    let cost = cost_form(g, spec, |u, a, v, b| LinearForm::entry(layout.index(u, a), layout.index(v, b)));
    let equalities = block_equalities(spec, layout);
    let sign = match nonneg {
        NonnegMode::None => Vec::new(),
        NonnegMode::Band => band_entries(spec, layout),
        NonnegMode::All => all_entries(layout.order()),
    };
    Ok(SdpProblem {
        model: "full".into(),
        spec: spec.clone(),
        layout,
        cost,
        sign: finalize_sign(sign, &equalities),
        equalities,
        inequalities: Vec::new(),
        basis: None,
        trace_bound: g.n() as f64 + 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{basic_partition, minpart_objective};
    use crate::sdp::lift_partition;

    #[test]
    fn lifted_basic_partition_is_feasible_with_matching_objective() {
        let g = Graph::cycle(7).unwrap();
        let spec = PartitionSpec::new(vec![2, 1, 2, 2], 1).unwrap();
        let p = build_full_model(&g, &spec, NonnegMode::All).unwrap();
        assert_eq!(p.lifted_order(), 29);
        let x = basic_partition(&spec);
        let z = lift_partition(&x, 4);
        assert!(p.max_violation(&z) < 1e-12);
        assert_eq!(p.objective(&z), minpart_objective(&g, &x, 1) as f64);
    }

    #[test]
    fn trace_bound_is_n_plus_one() {
        let g = Graph::path(6).unwrap();
        let spec = PartitionSpec::new(vec![2, 2, 2], 1).unwrap();
        let p = build_full_model(&g, &spec, NonnegMode::None).unwrap();
        assert_eq!(p.trace_bound, 7.0);
        assert!(p.sign.is_empty());
    }
}
