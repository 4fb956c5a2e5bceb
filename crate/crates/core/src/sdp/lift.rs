use nalgebra::{DMatrix, DVector};

use crate::partition::PartitionMatrix;

/// `[vec(X) restricted to the first `blocks` blocks; 1]`.
pub fn lifted_vector(x: &PartitionMatrix, blocks: usize) -> DVector<f64> {
    let n = x.n();
    let mut y = DVector::zeros(n * blocks + 1);
    for (v, &b) in x.blocks().iter().enumerate() {
        if b < blocks {
            y[b * n + v] = 1.0;
        }
    }
    y[n * blocks] = 1.0;
    y
}

/// Rank-one lift `y y^T` of a partition; pass `blocks = k - 1` for the
/// reduced model.
pub fn lift_partition(x: &PartitionMatrix, blocks: usize) -> DMatrix<f64> {
    let y = lifted_vector(x, blocks);
    &y * y.transpose()
}
