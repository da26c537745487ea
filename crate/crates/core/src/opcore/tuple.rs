use serde::Serialize;

use super::linalg::{block_cols, frob, is_finite, op_norm, CMat, C64};
use crate::{Error, Result};

/// `n` commuting `d × d` matrices, viewed also as the row operator
/// `(T_1 ⋯ T_n) : Hⁿ → H`.
///
/// `Hⁿ` is laid out block-wise: coordinate `h` of block `j` sits at index
/// `j·d + h`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTuple {
    ops: Vec<CMat>,
    dim: usize,
}

impl OperatorTuple {
    /// Shape and finiteness checks only; contractivity and commutation are
    /// reported by [`validate_tuple`].
    pub fn new(ops: Vec<CMat>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::InvalidArgument("tuple needs at least one operator".into()))?;
        let dim = first.nrows();
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be ≥ 1".into()));
        }
        for (k, t) in ops.iter().enumerate() {
            if t.nrows() != dim || t.ncols() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "operator {} is {}×{}, expected {dim}×{dim}",
                    k + 1,
                    t.nrows(),
                    t.ncols()
                )));
            }
            if !is_finite(t) {
                return Err(Error::InvalidArgument(format!(
                    "operator {} has non-finite entries",
                    k + 1
                )));
            }
        }
        Ok(Self { ops, dim })
    }

    /// Splits a `d × nd` row operator into its `n` blocks.
    pub fn from_row(row: &CMat, n: usize) -> Result<Self> {
        if n == 0 || row.ncols() != n * row.nrows() {
            return Err(Error::ShapeMismatch(format!(
                "row operator {}×{} cannot be split into {n} square blocks",
                row.nrows(),
                row.ncols()
            )));
        }
        let d = row.nrows();
        Self::new((0..n).map(|j| block_cols(row, j, d)).collect())
    }

    /// The scalar tuple `(z_1, …, z_n)` on `ℂ¹`.
    pub fn scalar(z: &[C64]) -> Result<Self> {
        Self::new(z.iter().map(|&v| CMat::from_element(1, 1, v)).collect())
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[CMat] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> &CMat {
        &self.ops[i]
    }

    pub fn into_ops(self) -> Vec<CMat> {
        self.ops
    }

    /// `(T_1 ⋯ T_n)` as a `d × nd` matrix.
    pub fn row(&self) -> CMat {
        let d = self.dim;
        let mut row = CMat::zeros(d, d * self.n());
        for (j, t) in self.ops.iter().enumerate() {
            row.columns_mut(j * d, d).copy_from(t);
        }
        row
    }

    /// `Σ T_i T_i*`.
    pub fn row_gram(&self) -> CMat {
        self.ops
            .iter()
            .fold(CMat::zeros(self.dim, self.dim), |acc, t| acc + t * t.adjoint())
    }

    /// `‖(T_1 ⋯ T_n)‖`.
    pub fn row_norm(&self) -> f64 {
        op_norm(&self.row())
    }

    /// `(T_1*, …, T_n*)`.
    pub fn adjoint_tuple(&self) -> Self {
        self.map(|t| t.adjoint())
    }

    pub fn neg(&self) -> Self {
        self.map(|t| -t)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|t| t.scale(s))
    }

    /// Simultaneous conjugation `T_i ↦ U* T_i U`.
    pub fn conjugate(&self, u: &CMat) -> Self {
        self.map(|t| u.adjoint() * t * u)
    }

    /// Block-diagonal direct sum `T ⊕ S`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::ShapeMismatch(format!(
                "direct sum of {}-tuple and {}-tuple",
                self.n(),
                other.n()
            )));
        }
        let (a, b) = (self.dim, other.dim);
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .map(|(s, t)| {
                let mut m = CMat::zeros(a + b, a + b);
                m.view_mut((0, 0), (a, a)).copy_from(s);
                m.view_mut((a, a), (b, b)).copy_from(t);
                m
            })
            .collect();
        Ok(Self { ops, dim: a + b })
    }

    /// Largest `‖T_iT_j − T_jT_i‖_F`.
    pub fn max_commutator(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                let (a, b) = (&self.ops[i], &self.ops[j]);
                worst = worst.max(frob(&(a * b - b * a)));
            }
        }
        worst
    }

    /// `max_i ‖T_i − S_i‖_F`.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.n() != other.n() || self.dim != other.dim {
            return f64::INFINITY;
        }
        self.ops
            .iter()
            .zip(&other.ops)
            .map(|(a, b)| frob(&(a - b)))
            .fold(0.0, f64::max)
    }

    fn map(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self {
            ops: self.ops.iter().map(f).collect(),
            dim: self.dim,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TupleDiagnostics {
    pub max_commutator: f64,
    pub row_norm: f64,
    pub commute_ok: bool,
    pub contract_ok: bool,
    pub pass: bool,
}

/// Commutator and row-norm residuals against the given tolerances.
pub fn validate_tuple(t: &OperatorTuple, tol_commute: f64, tol_contract: f64) -> TupleDiagnostics {
    let max_commutator = t.max_commutator();
    let row_norm = t.row_norm();
    let commute_ok = max_commutator <= tol_commute;
    let contract_ok = row_norm <= 1.0 + tol_contract;
    TupleDiagnostics {
        max_commutator,
        row_norm,
        commute_ok,
        contract_ok,
        pass: commute_ok && contract_ok,
    }
}
