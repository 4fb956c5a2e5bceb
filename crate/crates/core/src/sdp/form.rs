use std::collections::BTreeMap;

use nalgebra::DMatrix;

/// A linear functional on symmetric matrices, written as coefficients on
/// upper-triangular entries: `f(Y) = sum_{i <= j} c_ij * Y_ij`.
///
/// The matching symmetric operator `A` (with `f(Y) = <A, Y>`) has
/// `A_ii = c_ii` and `A_ij = A_ji = c_ij / 2`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearForm {
    /// Sorted by `(i, j)`, `i <= j`, no duplicates, no zeros.
    terms: Vec<(usize, usize, f64)>,
}

/// Accumulates coefficients before freezing them into a [`LinearForm`].
#[derive(Debug, Clone, Default)]
pub struct FormBuilder {
    terms: BTreeMap<(usize, usize), f64>,
}

impl FormBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coef * Y_ij` (order of `i`, `j` irrelevant).
    pub fn add(&mut self, i: usize, j: usize, coef: f64) -> &mut Self {
        *self.terms.entry((i.min(j), i.max(j))).or_insert(0.0) += coef;
        self
    }

    pub fn add_form(&mut self, form: &LinearForm, scale: f64) -> &mut Self {
        for &(i, j, c) in &form.terms {
            self.add(i, j, scale * c);
        }
        self
    }

    pub fn build(self) -> LinearForm {
        LinearForm {
            terms: self
                .terms
                .into_iter()
                .filter(|&(_, c)| c != 0.0)
                .map(|((i, j), c)| (i, j, c))
                .collect(),
        }
    }
}

impl LinearForm {
    /// The functional `Y -> Y_ij`.
    pub fn entry(i: usize, j: usize) -> Self {
        Self {
            terms: vec![(i.min(j), i.max(j), 1.0)],
        }
    }

    pub fn terms(&self) -> &[(usize, usize, f64)] {
        &self.terms
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient and entry when the form touches a single entry.
    pub fn single_entry(&self) -> Option<(usize, usize, f64)> {
        match self.terms[..] {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn eval(&self, y: &DMatrix<f64>) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c * y[(i, j)]).sum()
    }

    /// Adds `scale * A` to the symmetric matrix `y`.
    pub fn add_operator_to(&self, y: &mut DMatrix<f64>, scale: f64) {
        for &(i, j, c) in &self.terms {
            if i == j {
                y[(i, i)] += scale * c;
            } else {
                let v = 0.5 * scale * c;
                y[(i, j)] += v;
                y[(j, i)] += v;
            }
        }
    }

    /// Dense symmetric operator `A`.
    pub fn to_operator(&self, order: usize) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(order, order);
        self.add_operator_to(&mut a, 1.0);
        a
    }

    /// Reads a symmetric matrix as a functional: `c_ii = S_ii`, `c_ij = 2 S_ij`.
    pub fn from_operator(s: &DMatrix<f64>) -> Self {
        let mut terms = Vec::new();
        for j in 0..s.ncols() {
            for i in 0..=j {
                let c = if i == j { s[(i, i)] } else { s[(i, j)] + s[(j, i)] };
                if c != 0.0 {
                    terms.push((i, j, c));
                }
            }
        }
        terms.sort_unstable_by_key(|&(i, j, _)| (i, j));
        Self { terms }
    }

    /// Frobenius inner product of the underlying operators.
    pub fn operator_dot(&self, other: &LinearForm) -> f64 {
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        let mut sum = 0.0;
        while let (Some(&&(i, j, c)), Some(&&(p, q, d))) = (a.peek(), b.peek()) {
            match (i, j).cmp(&(p, q)) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    sum += if i == j { c * d } else { 0.5 * c * d };
                    a.next();
                    b.next();
                }
            }
        }
        sum
    }

    pub fn operator_norm_sq(&self) -> f64 {
        self.operator_dot(self)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.iter().map(|&(_, j, _)| j).max()
    }
}
