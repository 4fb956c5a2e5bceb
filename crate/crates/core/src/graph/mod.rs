//! Simple undirected graphs, labelings, and the instance families used
//! throughout the crate.
//!
//! Vertices are 0-based in the API. File formats (Matrix Market, JSON dump)
//! use 1-based indices.

mod generators;
mod mtx;
mod spectral;

use std::collections::VecDeque;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generators::{harper_bandwidth, make_hamming, make_torus, make_torus_ham, GraphFamily};
pub(crate) use generators::{Hamming, Hypercube, Torus, TorusHam};
pub use mtx::{load_matrix_market, parse_matrix_market, write_matrix_market};
pub use spectral::{spectral_bandwidth_bound, spectral_lower_bound, spectral_summary, SpectralSummary};

/// A simple undirected graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    n: usize,
    /// Sorted, deduplicated, each pair stored as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            name: name.into(),
            n,
            edges: normalized,
            adjacency,
        })
    }

    pub fn edgeless(name: impl Into<String>, n: usize) -> Result<Self> {
        Self::new(name, n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(format!("K{n}"), n, edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(format!("P{n}"), n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        Self::new(format!("C{n}"), n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Dense symmetric 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Combinatorial Laplacian `D - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = -self.adjacency_matrix();
        for v in 0..self.n {
            l[(v, v)] = self.degree(v) as f64;
        }
        l
    }

    /// Breadth-first distances from `source`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// The graph whose vertex `phi(v)` corresponds to vertex `v` of `self`.
    pub fn relabel(&self, phi: &Labeling) -> Result<Self> {
        phi.check_len(self.n)?;
        let edges = self.edges.iter().map(|&(u, v)| (phi.label(u), phi.label(v)));
        Self::new(self.name.clone(), self.n, edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            name: self.name.clone(),
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let mut edges = Vec::with_capacity(json.edges.len());
        for &[u, v] in &json.edges {
            if u == 0 || v == 0 {
                return Err(Error::invalid("JSON graph edges are 1-based"));
            }
            edges.push((u - 1, v - 1));
        }
        Self::new(json.name.clone(), json.n, edges)
    }

    /// Loads a graph from `.json` (internal dump) or Matrix Market.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            let text = std::fs::read_to_string(path)?;
            let json: GraphJson = serde_json::from_str(&text)?;
            Self::from_json(&json)
        } else {
            load_matrix_market(path)
        }
    }
}

/// Byte-stable JSON representation: `{name, n, edges: [[i, j], ...]}`,
/// 1-based, each pair with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub name: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// A bijection from vertices to labels `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// `labels[v]` is the label of vertex `v`.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        let mut seen = vec![false; n];
        for &l in &labels {
            if l >= n || std::mem::replace(&mut seen[l], true) {
                return Err(Error::invalid("labeling is not a permutation"));
            }
        }
        Ok(Self(labels))
    }

    /// Builds the labeling that assigns label `i` to `order[i]`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut labels = vec![usize::MAX; n];
        for (label, &v) in order.iter().enumerate() {
            if v >= n || labels[v] != usize::MAX {
                return Err(Error::invalid("vertex order is not a permutation"));
            }
            labels[v] = label;
        }
        Ok(Self(labels))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    /// Vertices in label order.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.0.len()];
        for (v, &l) in self.0.iter().enumerate() {
            order[l] = v;
        }
        order
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::invalid(format!(
                "labeling has {} entries, graph has {n} vertices",
                self.0.len()
            )));
        }
        Ok(())
    }
}

/// `max |phi(u) - phi(v)|` over edges; 0 for edgeless graphs.
pub fn bandwidth_of_labeling(g: &Graph, phi: &Labeling) -> usize {
    assert_eq!(phi.len(), g.n(), "labeling size mismatch");
    g.edges()
        .iter()
        .map(|&(u, v)| phi.label(u).abs_diff(phi.label(v)))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_merges_duplicates_and_rejects_loops() {
        let g = Graph::new("g", 3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(Graph::new("g", 3, [(1, 1)]).is_err());
        assert!(Graph::new("g", 3, [(0, 3)]).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_with_zero_diagonal() {
        let g = Graph::cycle(5).unwrap();
        let a = g.adjacency_matrix();
        assert_eq!(a, a.transpose());
        assert!((0..5).all(|i| a[(i, i)] == 0.0));
        assert_eq!(a.sum(), 10.0);
    }

    #[test]
    fn path_identity_bandwidth_is_one() {
        let g = Graph::path(3).unwrap();
        assert_eq!(bandwidth_of_labeling(&g, &Labeling::identity(3)), 1);
    }

    #[test]
    fn complete_graph_bandwidth_is_n_minus_one() {
        let g = Graph::complete(4).unwrap();
        for phi in [vec![0, 1, 2, 3], vec![3, 1, 0, 2], vec![2, 0, 3, 1]] {
            let phi = Labeling::new(phi).unwrap();
            assert_eq!(bandwidth_of_labeling(&g, &phi), 3);
        }
    }

    #[test]
    fn edgeless_bandwidth_is_zero() {
        let g = Graph::edgeless("e", 4).unwrap();
        assert_eq!(bandwidth_of_labeling(&g, &Labeling::identity(4)), 0);
    }

    #[test]
    fn labeling_rejects_non_permutations() {
        assert!(Labeling::new(vec![0, 0, 1]).is_err());
        assert!(Labeling::new(vec![0, 3, 1]).is_err());
        let phi = Labeling::from_order(&[2, 0, 1]).unwrap();
        assert_eq!(phi.labels(), &[1, 2, 0]);
        assert_eq!(phi.order(), vec![2, 0, 1]);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = Graph::path(4).unwrap();
        let phi = Labeling::new(vec![2, 0, 3, 1]).unwrap();
        let h = g.relabel(&phi).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert!(h.has_edge(2, 0) && h.has_edge(0, 3) && h.has_edge(3, 1));
        assert_eq!(bandwidth_of_labeling(&h, &Labeling::identity(4)), bandwidth_of_labeling(&g, &phi));
    }

    #[test]
    fn json_dump_is_sorted_and_one_based() {
        let g = Graph::new("tri", 3, [(2, 1), (0, 2), (1, 0)]).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(text, r#"{"name":"tri","n":3,"edges":[[1,2],[1,3],[2,3]]}"#);
        let back = Graph::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
