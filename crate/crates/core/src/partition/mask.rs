use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// The 0/1 matrix of order `k` with ones exactly where `|i - j| > r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMask {
    k: usize,
    r: usize,
}

pub fn band_mask(k: usize, r: usize) -> Result<BandMask> {
    if r == 0 || r + 2 > k {
        return Err(Error::invalid(format!("band radius r = {r} outside 1..=k-2 for k = {k}")));
    }
    Ok(BandMask { k, r })
}

impl BandMask {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        i.abs_diff(j) > self.r
    }

    /// Unordered block pairs `(u, v)`, `u < v`, that are more than `r` apart.
    pub fn far_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.k).flat_map(move |u| (u + self.r + 1..self.k).map(move |v| (u, v)))
    }

    pub fn ones_above_diagonal(&self) -> usize {
        let t = self.k - self.r - 1;
        t * (t + 1) / 2
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.k, self.k, |i, j| f64::from(u8::from(self.get(i, j))))
    }
}
