//! The characteristic function
//!
//! ```text
//! θ_T(z) = −T + D_{T*} (I − 𝐳T*)^{-1} 𝐳 D_T,    𝐳 = (z_1 I ⋯ z_n I)
//! ```
//!
//! of a commuting row contraction, evaluated pointwise on orthonormal
//! defect bases (`𝒟_T → 𝒟_{T*}`) or expanded as a power series.

mod coincidence;
mod spectrum;

use std::collections::HashMap;

pub use coincidence::{
    automorphism_theta_check, coincidence_residual, lemma_omega_check, theorem_omegas,
    theorem_theta_check, CoincidenceCertificate, TheoremOmegas,
};
pub use spectrum::{
    sigma_r_member, spectrum_charfn_consistency, theta_surjectivity, SigmaRWitness,
    SpectrumConsistency,
};

use crate::ball::BallPoint;
use crate::fractional::{compress, psi_with, resolvent_condition};
use crate::multiindex::{graded_indices, MultiIndex};
use crate::opcore::linalg::{block_rows, frob, identity, solve};
use crate::opcore::{CMat, DefectPair, OperatorTuple, Tolerances, C64};
use crate::{Error, Result};

/// `θ_T` together with the defect data it is written on.
#[derive(Clone, Debug)]
pub struct CharacteristicFunction {
    tuple: OperatorTuple,
    row: CMat,
    defects: DefectPair,
    tol: Tolerances,
}

impl CharacteristicFunction {
    pub fn new(t: &OperatorTuple, tol: &Tolerances) -> Result<Self> {
        let row = t.row();
        let defects = DefectPair::of_contraction(&row, tol)?;
        Ok(Self {
            tuple: t.clone(),
            row,
            defects,
            tol: *tol,
        })
    }

    pub fn tuple(&self) -> &OperatorTuple {
        &self.tuple
    }

    pub fn defects(&self) -> &DefectPair {
        &self.defects
    }

    /// `dim 𝒟_T`.
    pub fn domain_dim(&self) -> usize {
        self.defects.d.rank()
    }

    /// `dim 𝒟_{T*}`.
    pub fn codomain_dim(&self) -> usize {
        self.defects.dstar.rank()
    }

    /// `θ_T(z)` as an operator `Hⁿ → H`.
    pub fn eval_full(&self, z: &BallPoint) -> Result<CMat> {
        let (n, d) = (self.tuple.n(), self.tuple.dim());
        if z.n() != n {
            return Err(Error::ShapeMismatch(format!(
                "z ∈ ℂ^{} but T is a {n}-tuple",
                z.n()
            )));
        }
        if z.norm() >= 1.0 {
            return Err(Error::PoleHit(format!("|z| = {} ≥ 1", z.norm())));
        }
        let bold = z.amplify(d);
        let resolvent = identity(d) - &bold * self.row.adjoint();
        let (smin, cond) = resolvent_condition(&resolvent, self.tol.inv)?;
        let x = solve(&resolvent, &(bold * self.defects.big_d())).ok_or(
            Error::SingularResolvent {
                sigma_min: smin,
                condition: cond,
            },
        )?;
        Ok(self.defects.big_dstar() * x - &self.row)
    }

    /// `θ_T(z) : 𝒟_T → 𝒟_{T*}` on the orthonormal defect bases.
    pub fn eval(&self, z: &BallPoint) -> Result<CMat> {
        let full = self.eval_full(z)?;
        Ok(compress(
            &full,
            self.defects.basis_dstar(),
            self.defects.basis_d(),
        ))
    }
}

/// `θ_T(z)` on defect bases.
pub fn theta_eval(t: &OperatorTuple, z: &BallPoint, tol: &Tolerances) -> Result<CMat> {
    CharacteristicFunction::new(t, tol)?.eval(z)
}

/// `‖θ_T(z) − Ψ_{−T}(𝐳)‖_F` in ambient coordinates.
pub fn theta_psi_residual(t: &OperatorTuple, z: &BallPoint, tol: &Tolerances) -> Result<f64> {
    let theta = CharacteristicFunction::new(t, tol)?.eval_full(z)?;
    let psi = psi_with(&-t.row(), &z.amplify(t.dim()), tol)?;
    Ok(frob(&(theta - psi.full)))
}

/// Taylor coefficients `θ_T(z) = Σ_α Θ_α z^α`, each `Θ_α` written on the
/// defect bases.
#[derive(Clone, Debug)]
pub struct TaylorTable {
    n: usize,
    max_degree: usize,
    indices: Vec<MultiIndex>,
    coeffs: Vec<CMat>,
    position: HashMap<MultiIndex, usize>,
}

impl TaylorTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn coeffs(&self) -> &[CMat] {
        &self.coeffs
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<&CMat> {
        self.position.get(alpha).map(|&k| &self.coeffs[k])
    }

    /// `(rows, cols)` shared by every coefficient.
    pub fn shape(&self) -> (usize, usize) {
        self.coeffs[0].shape()
    }

    /// Partial sum `Σ_{|α| ≤ N} Θ_α z^α`.
    pub fn eval(&self, z: &BallPoint) -> CMat {
        let (r, c) = self.shape();
        self.indices
            .iter()
            .zip(&self.coeffs)
            .fold(CMat::zeros(r, c), |acc, (a, m)| acc + m * a.monomial(z.coords()))
    }
}

/// `T*^β = T_1*^{β_1} ⋯ T_n*^{β_n}` for every `|β| ≤ max_degree`.
pub(crate) fn adjoint_powers(t: &OperatorTuple, max_degree: usize) -> HashMap<MultiIndex, CMat> {
    let n = t.n();
    let adj: Vec<CMat> = t.ops().iter().map(|m| m.adjoint()).collect();
    let mut out: HashMap<MultiIndex, CMat> = HashMap::new();
    for beta in graded_indices(n, max_degree) {
        let value = match beta.first_nonzero() {
            None => identity(t.dim()),
            Some(i) => &adj[i] * &out[&beta.minus_unit(i).expect("β_i ≥ 1")],
        };
        out.insert(beta, value);
    }
    out
}

/// Coefficients of `θ_T` up to total degree `max_degree`:
///
/// ```text
/// Θ_0 = −T,   Θ_α = Σ_{j : α_j ≥ 1} (|α|−1)!/(α−e_j)! · D_{T*} T*^{α−e_j} [D_T]_j
/// ```
///
/// where `[D_T]_j` is the `j`-th block row of `D_T`, all compressed to the
/// defect bases.
pub fn theta_taylor(t: &OperatorTuple, max_degree: usize, tol: &Tolerances) -> Result<TaylorTable> {
    let cf = CharacteristicFunction::new(t, tol)?;
    Ok(taylor_from(&cf, max_degree))
}

pub(crate) fn taylor_from(cf: &CharacteristicFunction, max_degree: usize) -> TaylorTable {
    let t = cf.tuple();
    let (n, d) = (t.n(), t.dim());
    let dp = cf.defects();
    let powers = adjoint_powers(t, max_degree.saturating_sub(1));
    let left = dp.basis_dstar().adjoint() * dp.big_dstar();
    let rows: Vec<CMat> = (0..n)
        .map(|j| block_rows(dp.big_d(), j, d) * dp.basis_d())
        .collect();

    let indices = graded_indices(n, max_degree);
    let coeffs: Vec<CMat> = indices
        .iter()
        .map(|alpha| match alpha.degree() {
            0 => compress(&-&cf.row, dp.basis_dstar(), dp.basis_d()),
            _ => (0..n)
                .filter_map(|j| alpha.minus_unit(j).map(|beta| (j, beta)))
                .fold(CMat::zeros(left.nrows(), rows[0].ncols()), |acc, (j, beta)| {
                    acc + &left * &powers[&beta] * &rows[j] * C64::new(beta.multinomial(), 0.0)
                }),
        })
        .collect();
    let position = indices.iter().cloned().zip(0..).collect();
    TaylorTable {
        n,
        max_degree,
        indices,
        coeffs,
        position,
    }
}
