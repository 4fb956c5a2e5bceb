use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{bandwidth_of_labeling, Graph, Labeling};
use crate::Result;

use super::anneal::{accept, calibrate, AnnealParams, CALIBRATION_SAMPLES};

/// Breadth-first order of the component of `start`, visiting unvisited
/// neighbors by increasing degree (then index).
fn cuthill_mckee_component(g: &Graph, start: usize, seen: &mut [bool], order: &mut Vec<usize>) {
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let mut next: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !seen[w]).collect();
        next.sort_by_key(|&w| (g.degree(w), w));
        for w in next {
            seen[w] = true;
            queue.push_back(w);
        }
    }
}

/// Eccentricity of `v` and the minimum-degree vertex of its last level.
fn farthest(g: &Graph, v: usize) -> (usize, usize) {
    let dist = g.bfs_distances(v);
    let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
    let far = (0..g.n())
        .filter(|&w| dist[w] == Some(ecc))
        .min_by_key(|&w| (g.degree(w), w))
        .unwrap_or(v);
    (ecc, far)
}

/// Repeated BFS sweeps from `v` until the eccentricity stops growing.
fn pseudo_peripheral(g: &Graph, mut v: usize) -> usize {
    let (mut ecc, mut far) = farthest(g, v);
    loop {
        let (next_ecc, next_far) = farthest(g, far);
        if next_ecc <= ecc {
            return v;
        }
        v = far;
        ecc = next_ecc;
        far = next_far;
    }
}

/// Reverse Cuthill-McKee: each component is ordered breadth-first from a
/// pseudo-peripheral vertex, then the whole order is reversed.
pub fn rcm_labeling(g: &Graph) -> Labeling {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    for &v in &by_degree {
        if !seen[v] {
            let start = pseudo_peripheral(g, v);
            cuthill_mckee_component(g, start, &mut seen, &mut order);
        }
    }
    order.reverse();
    Labeling::from_order(&order).expect("breadth-first order is a permutation")
}

/// Labeling under annealing: label array, inverse, and a histogram of edge
/// lengths so the bandwidth and its multiplicity update in `O(degree)`.
struct State<'g> {
    g: &'g Graph,
    label: Vec<usize>,
    vertex: Vec<usize>,
    hist: Vec<usize>,
    width: usize,
}

impl<'g> State<'g> {
    fn new(g: &'g Graph, phi: &Labeling) -> Self {
        let label = phi.labels().to_vec();
        let vertex = phi.order();
        let mut hist = vec![0; g.n().max(1)];
        for &(u, v) in g.edges() {
            hist[label[u].abs_diff(label[v])] += 1;
        }
        let width = (0..hist.len()).rev().find(|&l| hist[l] > 0).unwrap_or(0);
        Self { g, label, vertex, hist, width }
    }

    /// Bandwidth first, then how many edges attain it.
    fn energy(&self) -> f64 {
        self.width as f64 + self.hist[self.width] as f64 / (self.g.edge_count() + 1) as f64
    }

    fn touch(&mut self, x: usize, y: usize, sign: isize) {
        let mut update = |len: usize| {
            if sign > 0 {
                self.hist[len] += 1;
                self.width = self.width.max(len);
            } else {
                self.hist[len] -= 1;
            }
        };
        for &w in self.g.neighbors(x) {
            update(self.label[x].abs_diff(self.label[w]));
        }
        for &w in self.g.neighbors(y) {
            if w != x {
                update(self.label[y].abs_diff(self.label[w]));
            }
        }
    }

    fn swap(&mut self, x: usize, y: usize) {
        self.touch(x, y, -1);
        let (lx, ly) = (self.label[x], self.label[y]);
        self.label.swap(x, y);
        self.vertex[lx] = y;
        self.vertex[ly] = x;
        self.touch(x, y, 1);
        while self.width > 0 && self.hist[self.width] == 0 {
            self.width -= 1;
        }
    }

    /// Half of the moves shorten a random longest edge by swapping one of
    /// its endpoints with a vertex labeled between them; the rest swap two
    /// random labels.
    fn propose(&self, rng: &mut ChaCha8Rng) -> (usize, usize) {
        let n = self.g.n();
        if self.width >= 2 && rng.gen_bool(0.5) {
            let critical: Vec<(usize, usize)> = self
                .g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| self.label[u].abs_diff(self.label[v]) == self.width)
                .collect();
            let (u, v) = critical[rng.gen_range(0..critical.len())];
            let (lo, hi) = if self.label[u] < self.label[v] { (u, v) } else { (v, u) };
            let target = rng.gen_range(self.label[lo] + 1..self.label[hi]);
            let moving = if rng.gen_bool(0.5) { lo } else { hi };
            return (moving, self.vertex[target]);
        }
        loop {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            if x != y {
                return (x, y);
            }
        }
    }

    fn labeling(&self) -> Labeling {
        Labeling::new(self.label.clone()).expect("annealing keeps a permutation")
    }
}

/// Annealing over label swaps starting from reverse Cuthill-McKee.
/// Returns the best labeling and its exact bandwidth.
pub fn sa_labeling(g: &Graph, params: &AnnealParams) -> Result<(Labeling, usize)> {
    sa_labeling_to_target(g, params, None)
}

/// As [`sa_labeling`], stopping as soon as the bandwidth is at most
/// `target`.
pub fn sa_labeling_to_target(g: &Graph, params: &AnnealParams, target: Option<usize>) -> Result<(Labeling, usize)> {
    params.validate()?;
    let start = rcm_labeling(g);
    let mut state = State::new(g, &start);
    let mut best = (state.energy(), state.labeling());
    let done = |state: &State<'_>| target.is_some_and(|t| state.width <= t);
    if g.n() < 3 || g.edge_count() == 0 || done(&state) {
        let width = bandwidth_of_labeling(g, &best.1);
        return Ok((best.1, width));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut temp = params.initial_temp.unwrap_or_else(|| {
        let base = state.energy();
        let samples: Vec<f64> = (0..CALIBRATION_SAMPLES)
            .map(|_| {
                let (x, y) = state.propose(&mut rng);
                state.swap(x, y);
                let delta = state.energy() - base;
                state.swap(x, y);
                delta
            })
            .collect();
        calibrate(&samples)
    });
    let steps = params.steps(g.n());
    'outer: while temp > params.min_temp {
        for _ in 0..steps {
            let before = state.energy();
            let (x, y) = state.propose(&mut rng);
            state.swap(x, y);
            let delta = state.energy() - before;
            if !accept(delta, temp, &mut rng) {
                state.swap(x, y);
                continue;
            }
            if state.energy() < best.0 {
                best = (state.energy(), state.labeling());
                if done(&state) {
                    break 'outer;
                }
            }
        }
        temp *= params.cooling_rate;
    }
    let width = bandwidth_of_labeling(g, &best.1);
    Ok((best.1, width))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scrambled_path_gets_bandwidth_one() {
        let g = Graph::path(9).unwrap();
        let phi = Labeling::new(vec![4, 8, 0, 6, 2, 7, 1, 3, 5]).unwrap();
        let scrambled = g.relabel(&phi).unwrap();
        let rcm = rcm_labeling(&scrambled);
        assert_eq!(bandwidth_of_labeling(&scrambled, &rcm), 1);
    }

    #[test]
    fn complete_graph_bandwidth_is_n_minus_one() {
        let g = Graph::complete(7).unwrap();
        let (phi, w) = sa_labeling(&g, &AnnealParams::default()).unwrap();
        assert_eq!(w, 6);
        assert_eq!(bandwidth_of_labeling(&g, &phi), 6);
    }

    #[test]
    fn histogram_tracks_swaps() {
        let g = Graph::cycle(8).unwrap();
        let mut s = State::new(&g, &Labeling::identity(8));
        assert_eq!(s.width, 7);
        s.swap(7, 1);
        let phi = s.labeling();
        assert_eq!(s.width, bandwidth_of_labeling(&g, &phi));
        let mut hist = vec![0; 8];
        for &(u, v) in g.edges() {
            hist[phi.label(u).abs_diff(phi.label(v))] += 1;
        }
        assert_eq!(hist, s.hist);
    }

    #[test]
    fn width_follows_long_jumps() {
        let g = crate::graph::make_torus(5).unwrap();
        let mut s = State::new(&g, &rcm_labeling(&g));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let (x, y) = (rng.gen_range(0..25), rng.gen_range(0..25));
            if x != y {
                s.swap(x, y);
                assert_eq!(s.width, bandwidth_of_labeling(&g, &s.labeling()));
            }
        }
    }

    #[test]
    fn disconnected_graph_is_labeled_completely() {
        let g = Graph::new("two", 6, vec![(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let phi = rcm_labeling(&g);
        assert_eq!(phi.len(), 6);
        assert_eq!(bandwidth_of_labeling(&g, &phi), 1);
    }
}
