use std::collections::HashMap;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::sdp::{LinearForm, SdpProblem};
use crate::{Error, Result};

/// Multipliers of the polyhedral constraints, in units where
/// `Y = M + sum y_a A_a + sum mu_l G_l + W` is the projection of `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMultipliers {
    /// One per equality.
    pub eq: Vec<f64>,
    /// One per inequality, nonnegative.
    pub ineq: Vec<f64>,
    /// Entry `W_ij` of the symmetric sign multiplier for each sign entry,
    /// nonnegative.
    pub sign: Vec<f64>,
}

impl DualMultipliers {
    fn zeros(problem: &SdpProblem) -> Self {
        Self {
            eq: vec![0.0; problem.equalities.len()],
            ineq: vec![0.0; problem.inequalities.len()],
            sign: vec![0.0; problem.sign.len()],
        }
    }

    pub(crate) fn scale(&mut self, s: f64) {
        for v in self.eq.iter_mut().chain(&mut self.ineq).chain(&mut self.sign) {
            *v *= s;
        }
    }

    pub(crate) fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.scale(s);
        out
    }
}

enum Mode {
    /// Every equality pins one entry and there are no inequalities: the
    /// projection is entrywise and exact.
    Entrywise { pinned: Vec<(usize, usize, f64, f64)> },
    /// Block coordinate ascent on the dual of the projection problem,
    /// warm-started from the previous call.
    General {
        chol: Option<Cholesky<f64, Dyn>>,
        ineq_norm_sq: Vec<f64>,
        sweeps: usize,
    },
}

/// Euclidean projector onto `{Y : A(Y) = b, G(Y) >= h, Y_s >= 0}`.
pub(crate) struct Polyhedron<'a> {
    problem: &'a SdpProblem,
    mode: Mode,
    pub(crate) duals: DualMultipliers,
}

impl<'a> Polyhedron<'a> {
    pub(crate) fn new(problem: &'a SdpProblem, sweeps: usize) -> Result<Self> {
        let pinned: Option<Vec<_>> = problem
            .equalities
            .iter()
            .map(|c| c.form.single_entry().map(|(i, j, coef)| (i, j, coef, c.rhs)))
            .collect();
        let mode = match pinned {
            Some(pinned) if problem.inequalities.is_empty() => Mode::Entrywise { pinned },
            _ => {
                let chol = if problem.equalities.is_empty() {
                    None
                } else {
                    let gram = gram_matrix(problem.equalities.iter().map(|c| &c.form));
                    Some(Cholesky::new(gram).ok_or_else(|| {
                        Error::Numerical("equality operators are linearly dependent".into())
                    })?)
                };
                let sweeps = if problem.sign.is_empty() && problem.inequalities.is_empty() { 1 } else { sweeps.max(1) };
                Mode::General {
                    chol,
                    ineq_norm_sq: problem.inequalities.iter().map(|c| c.form.operator_norm_sq()).collect(),
                    sweeps,
                }
            }
        };
        Ok(Self { problem, mode, duals: DualMultipliers::zeros(problem) })
    }

    #[cfg(test)]
    pub(crate) fn is_exact(&self) -> bool {
        match self.mode {
            Mode::Entrywise { .. } => true,
            Mode::General { sweeps, .. } => sweeps == 1,
        }
    }

    /// Projects `m`, updating the stored multipliers.
    pub(crate) fn project(&mut self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let problem = self.problem;
        let mut y = m.clone();
        match &self.mode {
            Mode::Entrywise { pinned } => {
                for (s, &(i, j)) in problem.sign.iter().enumerate() {
                    let v = y[(i, j)];
                    self.duals.sign[s] = (-v).max(0.0);
                    if v < 0.0 {
                        y[(i, j)] = 0.0;
                        y[(j, i)] = 0.0;
                    }
                }
                for (a, &(i, j, coef, rhs)) in pinned.iter().enumerate() {
                    let target = rhs / coef;
                    let delta = target - y[(i, j)];
                    self.duals.eq[a] = if i == j { delta / coef } else { 2.0 * delta / coef };
                    y[(i, j)] = target;
                    y[(j, i)] = target;
                }
            }
            Mode::General { chol, ineq_norm_sq, sweeps } => {
                for (s, &(i, j)) in problem.sign.iter().enumerate() {
                    add_sym(&mut y, i, j, self.duals.sign[s]);
                }
                for (l, c) in problem.inequalities.iter().enumerate() {
                    c.form.add_operator_to(&mut y, self.duals.ineq[l]);
                }
                for (a, c) in problem.equalities.iter().enumerate() {
                    c.form.add_operator_to(&mut y, self.duals.eq[a]);
                }
                for _ in 0..*sweeps {
                    for (s, &(i, j)) in problem.sign.iter().enumerate() {
                        let w = self.duals.sign[s];
                        let rest = y[(i, j)] - w;
                        let w_new = (-rest).max(0.0);
                        add_sym(&mut y, i, j, w_new - w);
                        self.duals.sign[s] = w_new;
                    }
                    for (l, c) in problem.inequalities.iter().enumerate() {
                        let mu = self.duals.ineq[l];
                        let nsq = ineq_norm_sq[l];
                        let mu_new = ((c.rhs - c.form.eval(&y)) / nsq + mu).max(0.0);
                        c.form.add_operator_to(&mut y, mu_new - mu);
                        self.duals.ineq[l] = mu_new;
                    }
                    if let Some(chol) = chol {
                        let r = DVector::from_iterator(
                            problem.equalities.len(),
                            problem.equalities.iter().map(|c| c.rhs - c.form.eval(&y)),
                        );
                        let step = chol.solve(&r);
                        for (a, c) in problem.equalities.iter().enumerate() {
                            c.form.add_operator_to(&mut y, step[a]);
                            self.duals.eq[a] += step[a];
                        }
                    }
                }
            }
        }
        y
    }
}

/// Adds `v` to the symmetric matrix entry `(i, j)` (both triangles).
fn add_sym(y: &mut DMatrix<f64>, i: usize, j: usize, v: f64) {
    y[(i, j)] += v;
    if i != j {
        y[(j, i)] += v;
    }
}

/// `G_ab = <A_a, A_b>` over the operators of the given forms.
pub(crate) fn gram_matrix<'f>(forms: impl Iterator<Item = &'f LinearForm>) -> DMatrix<f64> {
    let forms: Vec<&LinearForm> = forms.collect();
    let mut by_entry: HashMap<(usize, usize), Vec<(usize, f64)>> = HashMap::new();
    for (a, f) in forms.iter().enumerate() {
        for &(i, j, c) in f.terms() {
            by_entry.entry((i, j)).or_default().push((a, c));
        }
    }
    let mut gram = DMatrix::zeros(forms.len(), forms.len());
    for ((i, j), list) in by_entry {
        let w = if i == j { 1.0 } else { 0.5 };
        for &(a, ca) in &list {
            for &(b, cb) in &list {
                gram[(a, b)] += w * ca * cb;
            }
        }
    }
    gram
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::partition::PartitionSpec;
    use crate::sdp::{build_full_model, build_slater_model, NonnegMode};

    fn noise(order: usize, seed: u64) -> DMatrix<f64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = DMatrix::from_fn(order, order, |_, _| rng.gen_range(-1.0..1.0));
        (&m + m.transpose()) * 0.5
    }

    #[test]
    fn gram_matches_dense_operators() {
        let g = Graph::path(5).unwrap();
        let spec = PartitionSpec::new(vec![2, 1, 2], 1).unwrap();
        let p = build_full_model(&g, &spec, NonnegMode::None).unwrap();
        let gram = gram_matrix(p.equalities.iter().map(|c| &c.form));
        let ops: Vec<_> = p.equalities.iter().map(|c| c.form.to_operator(16)).collect();
        for a in 0..ops.len() {
            for b in 0..ops.len() {
                assert!((gram[(a, b)] - ops[a].dot(&ops[b])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn entrywise_projection_is_feasible_and_consistent() {
        let g = Graph::cycle(6).unwrap();
        let spec = PartitionSpec::new(vec![2, 2, 2], 1).unwrap();
        let p = build_slater_model(&g, &spec, NonnegMode::All).unwrap();
        let mut poly = Polyhedron::new(&p, 10).unwrap();
        assert!(poly.is_exact());
        let m = noise(19, 1);
        let y = poly.project(&m);
        assert!(p.max_violation(&y) < 1e-14);
        let mut back = m.clone();
        for (a, c) in p.equalities.iter().enumerate() {
            c.form.add_operator_to(&mut back, poly.duals.eq[a]);
        }
        for (s, &(i, j)) in p.sign.iter().enumerate() {
            add_sym(&mut back, i, j, poly.duals.sign[s]);
        }
        assert!((back - y).amax() < 1e-14);
    }

    #[test]
    fn affine_projection_is_exact_without_signs() {
        let g = Graph::path(5).unwrap();
        let spec = PartitionSpec::new(vec![2, 1, 2], 1).unwrap();
        let p = build_full_model(&g, &spec, NonnegMode::None).unwrap();
        let mut poly = Polyhedron::new(&p, 10).unwrap();
        let m = noise(16, 2);
        let y = poly.project(&m);
        assert!(p.max_violation(&y) < 1e-10);
        let y2 = poly.project(&y);
        assert!((y2 - &y).amax() < 1e-10);
    }

    #[test]
    fn repeated_general_projection_converges() {
        let g = Graph::path(5).unwrap();
        let spec = PartitionSpec::new(vec![2, 1, 2], 1).unwrap();
        let p = build_full_model(&g, &spec, NonnegMode::All).unwrap();
        let mut poly = Polyhedron::new(&p, 10).unwrap();
        let m = noise(16, 3);
        let mut y = poly.project(&m);
        for _ in 0..500 {
            y = poly.project(&m);
        }
        assert!(p.max_violation(&y) < 1e-8);
    }
}
