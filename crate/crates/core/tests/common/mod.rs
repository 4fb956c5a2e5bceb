#![allow(dead_code)]

use bandwidth_core::graph::Graph;
use bandwidth_core::partition::PartitionSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact bandwidth by placing vertices at positions `0, 1, ...` and
/// backtracking as soon as a placed edge is longer than the candidate width.
pub fn exhaustive_bandwidth(g: &Graph) -> usize {
    let n = g.n();
    (0..n.max(1)).find(|&b| fits(g, b)).unwrap_or(0)
}

fn fits(g: &Graph, b: usize) -> bool {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    fn place(g: &Graph, b: usize, next: usize, pos: &mut [usize]) -> bool {
        if next == pos.len() {
            return true;
        }
        for v in 0..pos.len() {
            if pos[v] != usize::MAX {
                continue;
            }
            let ok = g.neighbors(v).iter().all(|&u| pos[u] == usize::MAX || next - pos[u] <= b);
            if ok {
                pos[v] = next;
                if place(g, b, next + 1, pos) {
                    return true;
                }
                pos[v] = usize::MAX;
            }
        }
        false
    }
    place(g, b, 0, &mut pos)
}

/// Erdos-Renyi graph `G(n, p)` from a seed.
pub fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(format!("G{seed}"), n, edges).unwrap()
}

/// Every composition of `n` into `k` positive parts, with `r = 1`.
pub fn all_specs(n: usize, k: usize) -> Vec<PartitionSpec> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out.into_iter().map(|m| PartitionSpec::new(m, 1).unwrap()).collect()
}

pub fn star(leaves: usize) -> Graph {
    Graph::new("star", leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new("petersen", 10, edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
    Graph::new("Kab", a + b, edges).unwrap()
}
