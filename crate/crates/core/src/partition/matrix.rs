use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{Graph, Labeling};

use super::{band_mask, PartitionSpec};

/// Assignment of each vertex to one of `k` blocks; the implied matrix `X`
/// has `x_{ij} = 1` iff vertex `i` is in block `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionMatrix {
    k: usize,
    blocks: Vec<usize>,
}

impl PartitionMatrix {
    pub fn new(k: usize, blocks: Vec<usize>) -> Result<Self> {
        if let Some(&b) = blocks.iter().find(|&&b| b >= k) {
            return Err(Error::invalid(format!("block index {b} >= k = {k}")));
        }
        Ok(Self { k, blocks })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.blocks[v]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub(crate) fn swap_vertices(&mut self, u: usize, v: usize) {
        self.blocks.swap(u, v);
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &b in &self.blocks {
            sizes[b] += 1;
        }
        sizes
    }

    /// Whether the block sizes equal `spec.m()`.
    pub fn matches(&self, spec: &PartitionSpec) -> bool {
        self.k == spec.k() && self.sizes() == spec.m()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut x = DMatrix::zeros(self.n(), self.k);
        for (v, &b) in self.blocks.iter().enumerate() {
            x[(v, b)] = 1.0;
        }
        x
    }

    /// Row permutation `P X`: vertex `phi(v)` takes the block of vertex `v`.
    pub fn permuted(&self, phi: &Labeling) -> Self {
        let mut blocks = vec![0; self.n()];
        for (v, &b) in self.blocks.iter().enumerate() {
            blocks[phi.label(v)] = b;
        }
        Self { k: self.k, blocks }
    }

    /// A labeling listing the blocks in order (vertices within a block by index).
    pub fn block_order_labeling(&self) -> Labeling {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| (self.blocks[v], v));
        Labeling::from_order(&order).expect("sorted vertex list is a permutation")
    }
}

/// First `m_1` vertices in block 0, the next `m_2` in block 1, and so on.
pub fn basic_partition(spec: &PartitionSpec) -> PartitionMatrix {
    let blocks = spec
        .m()
        .iter()
        .enumerate()
        .flat_map(|(b, &size)| std::iter::repeat(b).take(size))
        .collect();
    PartitionMatrix { k: spec.k(), blocks }
}

/// Number of edges whose endpoints lie in blocks more than `r` apart.
pub fn minpart_objective(g: &Graph, x: &PartitionMatrix, r: usize) -> usize {
    assert_eq!(x.n(), g.n(), "partition size mismatch");
    g.edges()
        .iter()
        .filter(|&&(u, v)| x.block_of(u).abs_diff(x.block_of(v)) > r)
        .count()
}

/// `1/2 <A, X B_{r,k} X^T>` by dense matrix algebra.
pub fn minpart_objective_dense(g: &Graph, x: &PartitionMatrix, r: usize) -> Result<f64> {
    let b = band_mask(x.k(), r)?.to_dense();
    let xd = x.to_dense();
    let xbxt = &xd * b * xd.transpose();
    Ok(0.5 * g.adjacency_matrix().dot(&xbxt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_blocks_give_identity() {
        let spec = PartitionSpec::new(vec![1; 5], 2).unwrap();
        let x = basic_partition(&spec);
        assert_eq!(x.to_dense(), DMatrix::identity(5, 5));
    }

    #[test]
    fn fifteen_vertex_five_block_pattern() {
        let spec = PartitionSpec::new(vec![3; 5], 2).unwrap();
        let x = basic_partition(&spec).to_dense();
        let bmat = &x * band_mask(5, 2).unwrap().to_dense() * x.transpose();
        for i in 0..15 {
            for j in 0..15 {
                let expected = (i / 3usize).abs_diff(j / 3) > 2;
                assert_eq!(bmat[(i, j)] == 1.0, expected, "({i},{j})");
            }
        }
        // Closest nonzero to the diagonal: row 3 (1-based) paired with column 10.
        assert_eq!(bmat[(2, 9)], 1.0);
        assert_eq!(bmat[(2, 8)], 0.0);
    }

    #[test]
    fn edgeless_objective_is_zero() {
        let g = Graph::edgeless("e", 6).unwrap();
        let x = basic_partition(&PartitionSpec::new(vec![2, 2, 2], 1).unwrap());
        assert_eq!(minpart_objective(&g, &x, 1), 0);
    }

    #[test]
    fn six_cycle_partition_without_long_edges() {
        // Blocks {1,2}, {3,6}, {4,5} in 1-based vertex names.
        let g = Graph::cycle(6).unwrap();
        let x = PartitionMatrix::new(3, vec![0, 0, 1, 2, 2, 1]).unwrap();
        assert_eq!(minpart_objective(&g, &x, 1), 0);
        assert_eq!(minpart_objective_dense(&g, &x, 1).unwrap(), 0.0);
        let basic = basic_partition(&PartitionSpec::new(vec![2, 2, 2], 1).unwrap());
        // 1..6 cycle with the basic partition: only edge 6-1 jumps over block 2.
        assert_eq!(minpart_objective(&g, &basic, 1), 1);
    }

    #[test]
    fn block_order_labeling_sorts_by_block() {
        let x = PartitionMatrix::new(3, vec![2, 0, 1, 0]).unwrap();
        assert_eq!(x.block_order_labeling().order(), vec![1, 3, 2, 0]);
        assert_eq!(x.sizes(), vec![2, 1, 1]);
        assert!(PartitionMatrix::new(2, vec![0, 2]).is_err());
    }
}
