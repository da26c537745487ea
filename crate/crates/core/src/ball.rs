//! Points and analytic automorphisms of the unit ball `𝔹ⁿ`, and their
//! action on commuting row contractions.
//!
//! Points are row vectors. The involution `φ_λ` swaps `0` and `λ`; a
//! general automorphism is `α = ω ∘ φ_λ` with `ω` unitary acting by
//! right multiplication, `α(z) = φ_λ(z) ω`. On tuples the same right
//! action reads `T'_k = Σ_j T_j ω_{jk}`, so scalar and operator actions
//! agree on `ℂ¹`.

use crate::fractional::psi_full_with;
use crate::opcore::linalg::{frob, isometry_residual};
use crate::opcore::{c, validate_tuple, CMat, DefectPair, OperatorTuple, Tolerances, C64};
use crate::{Error, Result};

/// Pole threshold for `|1 − ⟨z, λ⟩|`.
pub const POLE_TOL: f64 = 1e-12;

/// Unitarity threshold for `ω`.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint(Vec<C64>);

impl BallPoint {
    pub fn new(coords: Vec<C64>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![C64::new(0.0, 0.0); n])
    }

    pub fn from_real(x: &[f64]) -> Self {
        Self(x.iter().map(|&v| c(v, 0.0)).collect())
    }

    pub fn coords(&self) -> &[C64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨z, w⟩ = Σ z_i conj(w_i)`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|z| -z).collect())
    }

    /// As a `1 × n` matrix, i.e. an operator `ℂⁿ → ℂ`.
    pub fn as_row(&self) -> CMat {
        CMat::from_row_slice(1, self.n(), &self.0)
    }

    pub fn from_row(row: &CMat) -> Self {
        Self(row.iter().copied().collect())
    }

    /// `z ω` (row vector times matrix).
    pub fn times(&self, m: &CMat) -> Self {
        Self::from_row(&(self.as_row() * m))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// The block row `(z_1 I_d ⋯ z_n I_d)`.
    pub fn amplify(&self, d: usize) -> CMat {
        let mut m = CMat::zeros(d, d * self.n());
        for (j, &z) in self.0.iter().enumerate() {
            for h in 0..d {
                m[(h, j * d + h)] = z;
            }
        }
        m
    }
}

/// `α = ω ∘ φ_λ`.
#[derive(Clone, Debug)]
pub struct Automorphism {
    unitary: CMat,
    center: BallPoint,
}

impl Automorphism {
    pub fn new(unitary: CMat, center: BallPoint) -> Result<Self> {
        let n = center.n();
        if unitary.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!(
                "ω must be {n}×{n}, got {}×{}",
                unitary.nrows(),
                unitary.ncols()
            )));
        }
        check_unitary(&unitary)?;
        if center.norm() >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "|λ| = {} is not inside the ball",
                center.norm()
            )));
        }
        Ok(Self { unitary, center })
    }

    /// The involution `φ_λ` (`ω = I`).
    pub fn involution(center: BallPoint) -> Result<Self> {
        Self::new(CMat::identity(center.n(), center.n()), center)
    }

    pub fn unitary(&self) -> &CMat {
        &self.unitary
    }

    pub fn center(&self) -> &BallPoint {
        &self.center
    }
}

fn check_unitary(u: &CMat) -> Result<()> {
    let residual = isometry_residual(u);
    if u.nrows() != u.ncols() || residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// `φ_λ(z) = λ − s_λ/(1 − ⟨z,λ⟩) · (z − (1 − s_λ) P_λ z)`, with
/// `s_λ = (1 − |λ|²)^{1/2}`; for `λ = 0`, `P_0 := 0` and `φ_0(z) = −z`.
pub fn phi_point(lambda: &BallPoint, z: &BallPoint) -> Result<BallPoint> {
    if lambda.n() != z.n() {
        return Err(Error::ShapeMismatch(format!(
            "λ ∈ ℂ^{} but z ∈ ℂ^{}",
            lambda.n(),
            z.n()
        )));
    }
    let l2 = lambda.norm().powi(2);
    if l2 >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "|λ| = {} is not inside the ball",
            l2.sqrt()
        )));
    }
    let s = (1.0 - l2).sqrt();
    let zl = z.inner(lambda);
    let denom = C64::new(1.0, 0.0) - zl;
    if denom.norm() <= POLE_TOL {
        return Err(Error::PoleHit(format!("1 − ⟨z, λ⟩ = {denom}")));
    }
    let factor = s / denom;
    let coords = lambda
        .coords()
        .iter()
        .zip(z.coords())
        .map(|(&l, &zi)| {
            let proj = if l2 > 0.0 { zl * l / l2 } else { C64::new(0.0, 0.0) };
            l - factor * (zi - proj * (1.0 - s))
        })
        .collect();
    Ok(BallPoint(coords))
}

/// `‖φ_λ(z) − Ψ_λ(−z)‖` with `λ`, `z` viewed as `1 × n` contractions.
pub fn phi_psi_agreement(lambda: &BallPoint, z: &BallPoint, tol: &Tolerances) -> Result<f64> {
    let direct = phi_point(lambda, z)?;
    let a = lambda.as_row();
    let defects = DefectPair::of_contraction(&a, tol)?;
    let (via_psi, _) = psi_full_with(&a, &-z.as_row(), &defects, tol.inv)?;
    Ok(direct.distance(&BallPoint::from_row(&via_psi)))
}

/// `φ_λ(T) = Ψ_𝛌(−T)` with `𝛌 = (λ_1 I ⋯ λ_n I)`.
pub fn phi_tuple(lambda: &BallPoint, t: &OperatorTuple, tol: &Tolerances) -> Result<OperatorTuple> {
    if lambda.n() != t.n() {
        return Err(Error::ShapeMismatch(format!(
            "λ ∈ ℂ^{} but T is a {}-tuple",
            lambda.n(),
            t.n()
        )));
    }
    if lambda.norm() >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "|λ| = {} is not inside the ball",
            lambda.norm()
        )));
    }
    let bold = lambda.amplify(t.dim());
    let defects = DefectPair::of_contraction(&bold, tol)?;
    let (row, _) = psi_full_with(&bold, &-t.row(), &defects, tol.inv)?;
    let out = OperatorTuple::from_row(&row, t.n())?;
    let diag = validate_tuple(&out, tol.commute, tol.contract);
    if !diag.pass {
        return Err(Error::CommutativityLost {
            commutator: diag.max_commutator,
            row_norm: diag.row_norm,
        });
    }
    Ok(out)
}

/// `T' = T (I ⊗ ω)`, i.e. `T'_k = Σ_j T_j ω_{jk}`.
pub fn apply_unitary(t: &OperatorTuple, omega: &CMat) -> Result<OperatorTuple> {
    if omega.shape() != (t.n(), t.n()) {
        return Err(Error::ShapeMismatch(format!(
            "ω must be {n}×{n} for a {n}-tuple",
            n = t.n()
        )));
    }
    check_unitary(omega)?;
    let d = t.dim();
    let ops = (0..t.n())
        .map(|k| {
            (0..t.n()).fold(CMat::zeros(d, d), |acc, j| acc + t.op(j) * omega[(j, k)])
        })
        .collect();
    OperatorTuple::new(ops)
}

/// `α(T) = φ_λ(T) (I ⊗ ω)`.
pub fn apply_automorphism(
    alpha: &Automorphism,
    t: &OperatorTuple,
    tol: &Tolerances,
) -> Result<OperatorTuple> {
    apply_unitary(&phi_tuple(&alpha.center, t, tol)?, &alpha.unitary)
}

/// `α(z) = φ_λ(z) ω`.
pub fn eval_automorphism(alpha: &Automorphism, z: &BallPoint) -> Result<BallPoint> {
    Ok(phi_point(&alpha.center, z)?.times(&alpha.unitary))
}

/// `α^{-1}(z) = φ_λ(z ω*)`.
pub fn eval_inverse(alpha: &Automorphism, z: &BallPoint) -> Result<BallPoint> {
    phi_point(&alpha.center, &z.times(&alpha.unitary.adjoint()))
}

/// `Σ T_i X T_i*`.
pub fn rho(t: &OperatorTuple, x: &CMat) -> CMat {
    t.ops()
        .iter()
        .fold(CMat::zeros(t.dim(), t.dim()), |acc, ti| acc + ti * x * ti.adjoint())
}

/// `max ‖ρ_{T'}(X) − ρ_T(X)‖` over the supplied `X`.
pub fn rho_invariance_residual(t: &OperatorTuple, t_prime: &OperatorTuple, xs: &[CMat]) -> f64 {
    xs.iter()
        .map(|x| frob(&(rho(t_prime, x) - rho(t, x))))
        .fold(0.0, f64::max)
}
