use crate::error::{Error, Result};
use crate::heuristics::{sa_labeling_to_target, AnnealParams};

use super::{bandwidth_of_labeling, Graph, Labeling};

/// Largest vertex count a generator will produce.
pub const MAX_GENERATED_VERTICES: usize = 1 << 20;

/// Named instance family, selectable at runtime through
/// [`crate::registry::generators`].
pub trait GraphFamily: Send + Sync {
    fn name(&self) -> &'static str;
    /// Human-readable parameter list, e.g. `"k"` or `"d q"`.
    fn params(&self) -> &'static str;
    fn generate(&self, params: &[usize]) -> Result<Graph>;
}

fn expect_params<'a>(name: &str, params: &'a [usize], count: usize) -> Result<&'a [usize]> {
    if params.len() != count {
        return Err(Error::invalid(format!(
            "{name} expects {count} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(params)
}

/// `k x k` grid with wraparound in both directions. Vertex `(i, j)` is
/// `i * k + j`.
pub fn make_torus(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::invalid(format!("torus needs k >= 3, got {k}")));
    }
    if k.checked_mul(k).map_or(true, |n| n > MAX_GENERATED_VERTICES) {
        return Err(Error::invalid(format!("torus T_{k} is too large")));
    }
    let id = |i: usize, j: usize| i * k + j;
    let mut edges = Vec::with_capacity(2 * k * k);
    for i in 0..k {
        for j in 0..k {
            edges.push((id(i, j), id((i + 1) % k, j)));
            edges.push((id(i, j), id(i, (j + 1) % k)));
        }
    }
    Graph::new(format!("T{k}"), k * k, edges)
}

/// Torus `T_k` relabeled by a labeling of bandwidth at most `2k`, plus the
/// Hamiltonian path `0-1-...-(n-1)` in that labeling.
pub fn make_torus_ham(k: usize) -> Result<Graph> {
    let torus = make_torus(k)?;
    let target = 2 * k;
    let params = AnnealParams {
        seed: 0x7a5_u64 + k as u64,
        ..AnnealParams::default()
    };
    let (phi, width) = sa_labeling_to_target(&torus, &params, Some(target))?;
    if width > target || bandwidth_of_labeling(&torus, &phi) != width {
        return Err(Error::ConstructionFailure(format!(
            "labeling search for T_{k} reached bandwidth {width}, need <= {target}"
        )));
    }
    torus_plus_path(&torus, &phi, k)
}

pub(crate) fn torus_plus_path(torus: &Graph, phi: &Labeling, k: usize) -> Result<Graph> {
    let relabeled = torus.relabel(phi)?;
    let n = relabeled.n();
    let edges = relabeled
        .edges()
        .iter()
        .copied()
        .chain((1..n).map(|v| (v - 1, v)));
    Graph::new(format!("TH{k}"), n, edges)
}

/// Hamming graph `H(d, q)`: `d`-tuples over `q` symbols, adjacent when they
/// differ in exactly one coordinate. Tuples are numbered in mixed radix with
/// the first coordinate most significant.
pub fn make_hamming(d: usize, q: usize) -> Result<Graph> {
    if d == 0 || q < 2 {
        return Err(Error::invalid(format!("hamming needs d >= 1, q >= 2 (got d={d}, q={q})")));
    }
    let n = u32::try_from(d)
        .ok()
        .and_then(|d| q.checked_pow(d))
        .filter(|&n| n <= MAX_GENERATED_VERTICES)
        .ok_or_else(|| Error::invalid(format!("H({d},{q}) exceeds {MAX_GENERATED_VERTICES} vertices")))?;
    let mut edges = Vec::with_capacity(n * d * (q - 1) / 2);
    for v in 0..n {
        let mut place = 1;
        for _ in 0..d {
            let digit = (v / place) % q;
            for other in digit + 1..q {
                edges.push((v, v + (other - digit) * place));
            }
            place *= q;
        }
    }
    let name = if q == 2 { format!("Q{d}") } else { format!("H({d},{q})") };
    Graph::new(name, n, edges)
}

/// Bandwidth of the hypercube `Q_d`: `sum_{i<d} C(i, floor(i/2))`.
pub fn harper_bandwidth(d: u32) -> u128 {
    assert!((1..=120).contains(&d), "harper_bandwidth defined here for 1 <= d <= 120");
    (0..d as u128).map(|i| binomial(i, i / 2)).sum()
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) struct Torus;
pub(crate) struct TorusHam;
pub(crate) struct Hypercube;
pub(crate) struct Hamming;

impl GraphFamily for Torus {
    fn name(&self) -> &'static str {
        "torus"
    }
    fn params(&self) -> &'static str {
        "k"
    }
    fn generate(&self, params: &[usize]) -> Result<Graph> {
        make_torus(expect_params(self.name(), params, 1)?[0])
    }
}

impl GraphFamily for TorusHam {
    fn name(&self) -> &'static str {
        "torus-ham"
    }
    fn params(&self) -> &'static str {
        "k"
    }
    fn generate(&self, params: &[usize]) -> Result<Graph> {
        make_torus_ham(expect_params(self.name(), params, 1)?[0])
    }
}

impl GraphFamily for Hypercube {
    fn name(&self) -> &'static str {
        "hypercube"
    }
    fn params(&self) -> &'static str {
        "d"
    }
    fn generate(&self, params: &[usize]) -> Result<Graph> {
        make_hamming(expect_params(self.name(), params, 1)?[0], 2)
    }
}

impl GraphFamily for Hamming {
    fn name(&self) -> &'static str {
        "hamming"
    }
    fn params(&self) -> &'static str {
        "d q"
    }
    fn generate(&self, params: &[usize]) -> Result<Graph> {
        let p = expect_params(self.name(), params, 2)?;
        make_hamming(p[0], p[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_regular(g: &Graph, degree: usize) -> bool {
        (0..g.n()).all(|v| g.degree(v) == degree)
    }

    #[test]
    fn torus_sizes() {
        let t7 = make_torus(7).unwrap();
        assert_eq!((t7.n(), t7.edge_count()), (49, 98));
        let t3 = make_torus(3).unwrap();
        assert_eq!(t3.n(), 9);
        assert!(is_regular(&t3, 4));
        assert!(make_torus(2).is_err());
    }

    #[test]
    fn torus_five_is_connected_and_vertex_transitive_by_bfs_profile() {
        let t5 = make_torus(5).unwrap();
        assert_eq!(t5.edge_count(), 50);
        assert!(t5.is_connected());
        // Vertex-transitive graphs have identical BFS distance profiles.
        let profile = |s: usize| {
            let mut d: Vec<usize> = t5.bfs_distances(s).into_iter().map(Option::unwrap).collect();
            d.sort_unstable();
            d
        };
        let reference = profile(0);
        assert!((1..25).all(|s| profile(s) == reference));
    }

    #[test]
    fn hamming_sizes() {
        let q5 = make_hamming(5, 2).unwrap();
        assert_eq!((q5.n(), q5.edge_count()), (32, 80));
        assert!(is_regular(&q5, 5));
        let k2 = make_hamming(1, 2).unwrap();
        assert_eq!((k2.n(), k2.edges()), (2, &[(0, 1)][..]));
        let h = make_hamming(2, 3).unwrap();
        assert_eq!((h.n(), h.edge_count()), (9, 18));
        assert!(is_regular(&h, 4));
        assert!(make_hamming(64, 2).is_err());
        assert!(make_hamming(3, 1).is_err());
    }

    #[test]
    fn harper_values() {
        assert_eq!(harper_bandwidth(1), 1);
        assert_eq!(harper_bandwidth(3), 4);
        assert_eq!(harper_bandwidth(5), 13);
        assert_eq!(harper_bandwidth(6), 23);
        assert_eq!(harper_bandwidth(7), 43);
    }

    #[test]
    fn torus_ham_contract() {
        for k in [3, 4, 6] {
            let th = make_torus_ham(k).unwrap();
            let n = k * k;
            assert_eq!(th.n(), n);
            assert!(th.edge_count() < 3 * n);
            assert!(bandwidth_of_labeling(&th, &Labeling::identity(n)) <= 2 * k);
            assert!((1..n).all(|v| th.has_edge(v - 1, v)));
        }
    }
}
