use std::io::{self, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::partition::PartitionSpec;

use super::LinearForm;

/// Which entries of the lifted matrix are required to be nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NonnegMode {
    /// No sign constraints.
    None,
    /// Only the blocks `X_uv` with `|u - v| > r`.
    Band,
    /// Every entry, borders included.
    #[default]
    All,
}

impl std::str::FromStr for NonnegMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "band" => Ok(Self::Band),
            "all" => Ok(Self::All),
            other => Err(crate::Error::invalid(format!("nonneg mode `{other}` (expected all|band|none)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ModelOptions {
    pub nonneg: NonnegMode,
    /// Reduced model only: require the reconstructed last block row to be
    /// nonnegative.
    pub prop1: bool,
}

/// Index arithmetic for a lifted matrix with `blocks` diagonal blocks of
/// order `n` followed by a single border row/column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockLayout {
    pub n: usize,
    pub blocks: usize,
}

impl BlockLayout {
    pub fn order(&self) -> usize {
        self.n * self.blocks + 1
    }

    pub fn index(&self, block: usize, vertex: usize) -> usize {
        debug_assert!(block < self.blocks && vertex < self.n);
        block * self.n + vertex
    }

    pub fn corner(&self) -> usize {
        self.n * self.blocks
    }
}

/// `<form, Y> = rhs` or `<form, Y> >= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub form: LinearForm,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(form: LinearForm, rhs: f64) -> Self {
        Self { form, rhs }
    }
}

/// A semidefinite program in lifted coordinates:
///
/// ```text
/// min  <C, Y>
/// s.t. <A_a, Y> = b_a,  <G_l, Y> >= h_l,  Y_ij >= 0 for (i, j) in sign set,
///      Y = V U V^T,  U PSD
/// ```
///
/// `V` is the identity unless the problem carries a face basis, in which
/// case the PSD variable `U` is smaller than `Y`.
#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub model: String,
    pub spec: PartitionSpec,
    pub layout: BlockLayout,
    pub cost: LinearForm,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
    /// Upper-triangular entries `(i, j)`, `i <= j`, required nonnegative.
    pub sign: Vec<(usize, usize)>,
    /// Orthonormal columns spanning the face containing the feasible set.
    pub basis: Option<DMatrix<f64>>,
    /// Upper bound on `trace(Y)` over the feasible set.
    pub trace_bound: f64,
}

impl SdpProblem {
    /// Order of the lifted matrix `Y`.
    pub fn lifted_order(&self) -> usize {
        self.layout.order()
    }

    /// Order of the PSD variable.
    pub fn variable_order(&self) -> usize {
        self.basis.as_ref().map_or(self.lifted_order(), DMatrix::ncols)
    }

    /// `V^T A V` for a lifted-space operator.
    pub fn transport(&self, form: &LinearForm) -> DMatrix<f64> {
        let a = form.to_operator(self.lifted_order());
        match &self.basis {
            Some(v) => v.transpose() * a * v,
            None => a,
        }
    }

    pub fn transported_cost(&self) -> DMatrix<f64> {
        self.transport(&self.cost)
    }

    pub fn transported_equalities(&self) -> Vec<(DMatrix<f64>, f64)> {
        self.equalities.iter().map(|c| (self.transport(&c.form), c.rhs)).collect()
    }

    /// `V U V^T`.
    pub fn lift_variable(&self, u: &DMatrix<f64>) -> DMatrix<f64> {
        match &self.basis {
            Some(v) => v * u * v.transpose(),
            None => u.clone(),
        }
    }

    pub fn objective(&self, y: &DMatrix<f64>) -> f64 {
        self.cost.eval(y)
    }

    /// Largest violation over equalities, inequalities and sign constraints.
    pub fn max_violation(&self, y: &DMatrix<f64>) -> f64 {
        let eq = self.equalities.iter().map(|c| (c.form.eval(y) - c.rhs).abs());
        let ineq = self.inequalities.iter().map(|c| (c.rhs - c.form.eval(y)).max(0.0));
        let sign = self.sign.iter().map(|&(i, j)| (-y[(i, j)]).max(0.0));
        eq.chain(ineq).chain(sign).fold(0.0, f64::max)
    }

    /// Plain-text dump for cross-checking with an external SDP solver.
    ///
    /// Indices are 1-based; every coefficient multiplies the upper entry
    /// `Y_ij` (`i <= j`), so `<form, Y> = sum c * Y_ij`.
    pub fn write_dump(&self, mut out: impl Write) -> io::Result<()> {
        let write_form = |out: &mut dyn Write, form: &LinearForm| -> io::Result<()> {
            for &(i, j, c) in form.terms() {
                writeln!(out, "{} {} {c:e}", i + 1, j + 1)?;
            }
            Ok(())
        };
        writeln!(out, "model {}", self.model)?;
        writeln!(out, "spec {}", serde_json::to_string(&self.spec).map_err(io::Error::other)?)?;
        writeln!(out, "order {}", self.lifted_order())?;
        writeln!(out, "variable_order {}", self.variable_order())?;
        writeln!(out, "trace_bound {:e}", self.trace_bound)?;
        writeln!(out, "cost {}", self.cost.nnz())?;
        write_form(&mut out, &self.cost)?;
        for (kind, list) in [("equality", &self.equalities), ("inequality", &self.inequalities)] {
            for c in list {
                writeln!(out, "{kind} {:e} {}", c.rhs, c.form.nnz())?;
                write_form(&mut out, &c.form)?;
            }
        }
        writeln!(out, "sign {}", self.sign.len())?;
        for &(i, j) in &self.sign {
            writeln!(out, "{} {}", i + 1, j + 1)?;
        }
        if let Some(v) = &self.basis {
            writeln!(out, "basis {} {}", v.nrows(), v.ncols())?;
            for row in v.row_iter() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:e}")).collect();
                writeln!(out, "{}", cells.join(" "))?;
            }
        }
        writeln!(out, "end")
    }
}
