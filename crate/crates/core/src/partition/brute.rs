use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{PartitionMatrix, PartitionSpec};

pub const DEFAULT_ENUMERATION_BUDGET: f64 = 1e7;

/// `n! / (m_1! ... m_k!)`, the number of partitions with sizes `m`.
pub fn multinomial_estimate(spec: &PartitionSpec) -> f64 {
    let ln_fact = |x: usize| (2..=x).map(|i| (i as f64).ln()).sum::<f64>();
    let ln = ln_fact(spec.n()) - spec.m().iter().map(|&s| ln_fact(s)).sum::<f64>();
    ln.exp()
}

/// Exact `minPart(m, r)` by depth-first enumeration of all partitions with
/// sizes `m`, assigning vertices in index order and blocks in increasing
/// order, pruning branches that cannot beat the incumbent.
///
/// Refuses when the multinomial count exceeds `budget`.
pub fn brute_force_minpart(g: &Graph, spec: &PartitionSpec, budget: f64) -> Result<(usize, PartitionMatrix)> {
    spec.check_n(g.n())?;
    let estimate = multinomial_estimate(spec);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let mut search = Search {
        g,
        r: spec.r(),
        remaining: spec.m().to_vec(),
        blocks: vec![usize::MAX; g.n()],
        best: usize::MAX,
        best_blocks: Vec::new(),
    };
    search.descend(0, 0);
    let x = PartitionMatrix::new(spec.k(), search.best_blocks)?;
    Ok((search.best, x))
}

struct Search<'a> {
    g: &'a Graph,
    r: usize,
    remaining: Vec<usize>,
    blocks: Vec<usize>,
    best: usize,
    best_blocks: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, v: usize, cost: usize) {
        if v == self.g.n() {
            if cost < self.best {
                self.best = cost;
                self.best_blocks = self.blocks.clone();
            }
            return;
        }
        for b in 0..self.remaining.len() {
            if self.remaining[b] == 0 {
                continue;
            }
            let added = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&w| w < v && self.blocks[w].abs_diff(b) > self.r)
                .count();
            if cost + added >= self.best {
                continue;
            }
            self.remaining[b] -= 1;
            self.blocks[v] = b;
            self.descend(v + 1, cost + added);
            self.blocks[v] = usize::MAX;
            self.remaining[b] += 1;
            if self.best == 0 {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::minpart_objective;

    #[test]
    fn edgeless_is_zero() {
        let g = Graph::edgeless("e", 7).unwrap();
        let spec = PartitionSpec::new(vec![2, 3, 2], 1).unwrap();
        assert_eq!(brute_force_minpart(&g, &spec, 1e7).unwrap().0, 0);
    }

    #[test]
    fn complete_graph_on_unit_blocks() {
        // Labels at distance >= 2 among 5 positions: 3 + 2 + 1.
        let g = Graph::complete(5).unwrap();
        let spec = PartitionSpec::new(vec![1; 5], 1).unwrap();
        assert_eq!(brute_force_minpart(&g, &spec, 1e7).unwrap().0, 6);
    }

    #[test]
    fn six_cycle_has_zero_partition() {
        let g = Graph::cycle(6).unwrap();
        let spec = PartitionSpec::new(vec![2, 2, 2], 1).unwrap();
        let (value, x) = brute_force_minpart(&g, &spec, 1e7).unwrap();
        assert_eq!(value, 0);
        assert!(x.matches(&spec));
        assert_eq!(minpart_objective(&g, &x, 1), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::path(30).unwrap();
        let spec = PartitionSpec::new(vec![10, 10, 10], 1).unwrap();
        match brute_force_minpart(&g, &spec, 1e7) {
            Err(Error::BudgetExceeded { estimate, .. }) => assert!(estimate > 5e12),
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!((multinomial_estimate(&PartitionSpec::new(vec![2, 2, 2], 1).unwrap()) - 90.0).abs() < 1e-9);
    }

    #[test]
    fn size_mismatch_rejected() {
        let g = Graph::path(5).unwrap();
        let spec = PartitionSpec::new(vec![2, 2, 2], 1).unwrap();
        assert!(brute_force_minpart(&g, &spec, 1e7).is_err());
    }
}
