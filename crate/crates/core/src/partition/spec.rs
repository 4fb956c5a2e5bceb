use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Block sizes `m` (one per block, in order) and band radius `r`.
///
/// Serialized as `{k, r, m: [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct PartitionSpec {
    m: Vec<usize>,
    r: usize,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    k: usize,
    r: usize,
    m: Vec<usize>,
}

impl TryFrom<SpecJson> for PartitionSpec {
    type Error = Error;

    fn try_from(json: SpecJson) -> Result<Self> {
        if json.k != json.m.len() {
            return Err(Error::invalid(format!("k = {} but m has {} entries", json.k, json.m.len())));
        }
        PartitionSpec::new(json.m, json.r)
    }
}

impl From<PartitionSpec> for SpecJson {
    fn from(spec: PartitionSpec) -> Self {
        SpecJson {
            k: spec.k(),
            r: spec.r,
            m: spec.m,
        }
    }
}

impl PartitionSpec {
    /// Requires `k >= 3`, every `m_i >= 1`, and `1 <= r <= k - 2`.
    pub fn new(m: Vec<usize>, r: usize) -> Result<Self> {
        let k = m.len();
        if k < 3 {
            return Err(Error::invalid(format!("need at least 3 blocks, got {k}")));
        }
        if m.iter().any(|&s| s == 0) {
            return Err(Error::invalid(format!("block sizes must be positive: {m:?}")));
        }
        if r == 0 || r > k - 2 {
            return Err(Error::invalid(format!("radius r = {r} outside 1..={}", k - 2)));
        }
        Ok(Self { m, r })
    }

    /// Checks that the sizes sum to the vertex count of the target graph.
    pub fn check_n(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::invalid(format!(
                "block sizes {:?} sum to {}, graph has {n} vertices",
                self.m,
                self.n()
            )));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.iter().sum()
    }

    /// Smallest sum of `r` consecutive inner sizes `m_{i+1} + ... + m_{i+r}`,
    /// `i = 1..k-r-1`. If `minPart(m, r) > 0` the bandwidth exceeds this.
    pub fn theorem1_threshold(&self) -> usize {
        (1..self.k() - self.r)
            .map(|start| self.m[start..start + self.r].iter().sum())
            .min()
            .expect("k - r - 1 >= 1 windows")
    }

    /// Largest sum of `r + 1` consecutive sizes. If `minPart(m, r) = 0` the
    /// bandwidth is strictly below this.
    pub fn theorem2_threshold(&self) -> usize {
        self.m
            .windows(self.r + 1)
            .map(|w| w.iter().sum())
            .max()
            .expect("k >= r + 1")
    }

    pub fn label(&self) -> String {
        let sizes: Vec<String> = self.m.iter().map(usize::to_string).collect();
        format!("({}) r={}", sizes.join(","), self.r)
    }
}

fn outer_split(n: usize, inner: &[usize]) -> Result<(usize, usize)> {
    let d: usize = inner.iter().sum();
    if d + 2 > n {
        return Err(Error::invalid(format!(
            "inner blocks use {d} of {n} vertices, nothing left for both outer blocks"
        )));
    }
    let rest = n - d;
    Ok((rest / 2, rest - rest / 2))
}

fn with_outer(n: usize, inner: Vec<usize>, r: usize) -> Result<PartitionSpec> {
    let (first, last) = outer_split(n, &inner)?;
    let mut m = Vec::with_capacity(inner.len() + 2);
    m.push(first);
    m.extend(inner);
    m.push(last);
    PartitionSpec::new(m, r)
}

/// `k - 2` equal inner blocks of size `inner`, outer blocks differing by at
/// most one (the smaller first), `r = 1`.
pub fn scheme_equal_blocks(n: usize, k: usize, inner: usize) -> Result<PartitionSpec> {
    if k < 3 || inner == 0 {
        return Err(Error::invalid(format!("equal-blocks scheme needs k >= 3 and inner >= 1 (k={k}, inner={inner})")));
    }
    with_outer(n, vec![inner; k - 2], 1)
}

/// `m_1 = floor((n - d) / 2)`, `m_k = ceil((n - d) / 2)` around `k - 2`
/// inner blocks of size `inner`, where `d` is the inner total; `r = 1`.
/// Identical sizes to [`scheme_equal_blocks`]; kept separate because the
/// literature sweep may change `r` independently.
pub fn scheme_literature(n: usize, k: usize, inner: usize) -> Result<PartitionSpec> {
    scheme_equal_blocks(n, k, inner)
}

/// `(m_1, a, b, a, b, ..., m_k)` with `r = 2`, so every Theorem-1 window
/// sums to `a + b`.
pub fn scheme_alternating(n: usize, k: usize, a: usize, b: usize) -> Result<PartitionSpec> {
    if k < 4 || a == 0 || b == 0 {
        return Err(Error::invalid(format!("alternating scheme needs k >= 4 and positive sizes (k={k})")));
    }
    let inner = (0..k - 2).map(|i| if i % 2 == 0 { a } else { b }).collect();
    with_outer(n, inner, 2)
}

/// Named generator of partition specs, selectable at runtime through
/// [`crate::registry::schemes`].
pub trait PartitionScheme: Send + Sync {
    fn name(&self) -> &'static str;
    /// Parameters after `n`, e.g. `"k inner"`.
    fn params(&self) -> &'static str;
    fn build(&self, n: usize, params: &[usize]) -> Result<PartitionSpec>;
}

fn arity(name: &str, params: &[usize], count: usize) -> Result<()> {
    if params.len() == count {
        Ok(())
    } else {
        Err(Error::invalid(format!("scheme {name} expects {count} parameters, got {}", params.len())))
    }
}

pub struct EqualBlocksScheme;
pub struct LiteratureScheme;
pub struct AlternatingScheme;

impl PartitionScheme for EqualBlocksScheme {
    fn name(&self) -> &'static str {
        "equal"
    }
    fn params(&self) -> &'static str {
        "k inner"
    }
    fn build(&self, n: usize, p: &[usize]) -> Result<PartitionSpec> {
        arity(self.name(), p, 2)?;
        scheme_equal_blocks(n, p[0], p[1])
    }
}

impl PartitionScheme for LiteratureScheme {
    fn name(&self) -> &'static str {
        "literature"
    }
    fn params(&self) -> &'static str {
        "k inner"
    }
    fn build(&self, n: usize, p: &[usize]) -> Result<PartitionSpec> {
        arity(self.name(), p, 2)?;
        scheme_literature(n, p[0], p[1])
    }
}

impl PartitionScheme for AlternatingScheme {
    fn name(&self) -> &'static str {
        "alternating"
    }
    fn params(&self) -> &'static str {
        "k a b"
    }
    fn build(&self, n: usize, p: &[usize]) -> Result<PartitionSpec> {
        arity(self.name(), p, 3)?;
        scheme_alternating(n, p[0], p[1], p[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: &[usize], r: usize) -> PartitionSpec {
        PartitionSpec::new(m.to_vec(), r).unwrap()
    }

    #[test]
    fn validation() {
        assert!(PartitionSpec::new(vec![5], 1).is_err());
        assert!(PartitionSpec::new(vec![2, 3], 1).is_err());
        assert!(PartitionSpec::new(vec![2, 0, 3], 1).is_err());
        assert!(PartitionSpec::new(vec![2, 2, 3], 2).is_err());
        assert!(PartitionSpec::new(vec![2, 2, 3], 0).is_err());
        assert!(PartitionSpec::new(vec![2, 2, 3, 1], 2).is_ok());
    }

    #[test]
    fn theorem1_thresholds() {
        assert_eq!(spec(&[16, 8, 8, 17], 1).theorem1_threshold(), 8);
        assert_eq!(spec(&[15, 9, 8, 9, 8, 15], 2).theorem1_threshold(), 17);
        for r in 1..=4 {
            assert_eq!(spec(&[1; 6], r).theorem1_threshold(), r);
        }
    }

    #[test]
    fn theorem2_thresholds() {
        assert_eq!(spec(&[3, 3, 3, 3, 3], 2).theorem2_threshold(), 9);
        for r in 1..=4 {
            assert_eq!(spec(&[1; 6], r).theorem2_threshold(), r + 1);
        }
    }

    #[test]
    fn equal_block_scheme() {
        assert_eq!(scheme_equal_blocks(49, 4, 8).unwrap().m(), &[16, 8, 8, 17]);
        assert_eq!(scheme_equal_blocks(64, 6, 10).unwrap().m(), &[12, 10, 10, 10, 10, 12]);
        assert_eq!(scheme_equal_blocks(49, 5, 9).unwrap().m(), &[11, 9, 9, 9, 11]);
        assert_eq!(scheme_equal_blocks(10, 3, 8).unwrap().m(), &[1, 8, 1]);
        assert!(scheme_equal_blocks(10, 3, 9).is_err());
        assert_eq!(scheme_literature(62, 3, 10).unwrap().m(), &[26, 10, 26]);
    }

    #[test]
    fn alternating_scheme() {
        let s = scheme_alternating(64, 6, 9, 8).unwrap();
        assert_eq!((s.m(), s.r()), (&[15, 9, 8, 9, 8, 15][..], 2));
        assert_eq!(scheme_alternating(64, 6, 9, 9).unwrap().m(), &[14, 9, 9, 9, 9, 14]);
        assert_eq!(scheme_alternating(20, 4, 5, 4).unwrap().m(), &[5, 5, 4, 6]);
        assert!(scheme_alternating(10, 6, 3, 3).is_err());
    }

    #[test]
    fn json_shape() {
        let s = spec(&[16, 8, 8, 17], 1);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"k":4,"r":1,"m":[16,8,8,17]}"#);
        assert_eq!(serde_json::from_str::<PartitionSpec>(&text).unwrap(), s);
        assert!(serde_json::from_str::<PartitionSpec>(r#"{"k":3,"r":1,"m":[1,2,3,4]}"#).is_err());
    }
}
