//! The fractional transform
//!
//! ```text
//! Ψ_A(W) = A + D_{A*} (I + W A*)^{-1} W D_A
//! ```
//!
//! of two contractions `A, W : E₁ → E₂`, its restriction
//! `ψ_A(W) : 𝒟_A → 𝒟_{A*}` written on orthonormal defect bases, the defect
//! identities it satisfies and the isometries `Ω : 𝒟_{Ψ_A(W)} → 𝒟_W`,
//! `Ω_* : 𝒟_{Ψ_A(W)*} → 𝒟_{W*}` defined on the spanning sets
//! `{D_{Ψ_A(W)} x}` and `{D_{Ψ_A(W)*} x}`.

use crate::opcore::linalg::{
    frob, identity, isometry_residual, op_norm, sigma_min, solve, solve_right_lstsq,
};
use crate::opcore::{CMat, DefectPair, Tolerances};
use crate::{Error, Result};

/// Threshold for the isometry/unitarity flags of [`OmegaPair`].
pub const OMEGA_TOL: f64 = 1e-9;

/// Relative least-squares residual above which `Ω` is declared inconsistent.
pub const CONSISTENCY_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct FractionalResult {
    /// `Ψ_A(W)`, same shape as `A`.
    pub full: CMat,
    /// `ψ_A(W)` as a `rank(D_{A*}) × rank(D_A)` matrix on the defect bases of `A`.
    pub restricted: CMat,
    /// Condition number of `I + W A*`.
    pub cond_number: f64,
    /// Defects of `A`, whose bases `restricted` is written in.
    pub defects: DefectPair,
}

fn check_shapes(a: &CMat, w: &CMat) -> Result<()> {
    if a.shape() != w.shape() {
        return Err(Error::ShapeMismatch(format!(
            "A is {}×{} but W is {}×{}",
            a.nrows(),
            a.ncols(),
            w.nrows(),
            w.ncols()
        )));
    }
    Ok(())
}

/// `(σ_min, cond)` of a square matrix; errors when `σ_min ≤ inv_tol` or
/// `cond ≥ 1/inv_tol`.
pub(crate) fn resolvent_condition(m: &CMat, inv_tol: f64) -> Result<(f64, f64)> {
    if m.is_empty() {
        return Ok((f64::INFINITY, 1.0));
    }
    let smax = op_norm(m);
    let smin = sigma_min(m);
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if smin <= inv_tol || cond >= 1.0 / inv_tol {
        return Err(Error::SingularResolvent {
            sigma_min: smin,
            condition: cond,
        });
    }
    Ok((smin, cond))
}

/// `Ψ_A(W)` with the defects of `A` supplied by the caller.
pub(crate) fn psi_full_with(
    a: &CMat,
    w: &CMat,
    defects_a: &DefectPair,
    inv_tol: f64,
) -> Result<(CMat, f64)> {
    check_shapes(a, w)?;
    let resolvent = identity(a.nrows()) + w * a.adjoint();
    let (smin, cond) = resolvent_condition(&resolvent, inv_tol)?;
    let x = solve(&resolvent, w).ok_or(Error::SingularResolvent {
        sigma_min: smin,
        condition: cond,
    })?;
    Ok((a + defects_a.big_dstar() * x * defects_a.big_d(), cond))
}

/// Compresses an operator `E₁ → E₂` to `(basis_in, basis_out)`.
pub(crate) fn compress(m: &CMat, basis_out: &CMat, basis_in: &CMat) -> CMat {
    basis_out.adjoint() * m * basis_in
}

/// `Ψ_A(W)` and `ψ_A(W)`.
pub fn psi(a: &CMat, w: &CMat, inv_tol: f64) -> Result<FractionalResult> {
    psi_with(
        a,
        w,
        &Tolerances {
            inv: inv_tol,
            ..Tolerances::default()
        },
    )
}

pub fn psi_with(a: &CMat, w: &CMat, tol: &Tolerances) -> Result<FractionalResult> {
    check_shapes(a, w)?;
    let defects = DefectPair::of_contraction(a, tol)?;
    let (full, cond_number) = psi_full_with(a, w, &defects, tol.inv)?;
    let restricted = compress(&full, defects.basis_dstar(), defects.basis_d());
    Ok(FractionalResult {
        full,
        restricted,
        cond_number,
        defects,
    })
}

/// `‖Ψ_{−A}(−W) + Ψ_A(W)‖_F`.
pub fn psi_minus_symmetry_residual(a: &CMat, w: &CMat, tol: &Tolerances) -> Result<f64> {
    let plus = psi_with(a, w, tol)?;
    let minus = psi_with(&-a, &-w, tol)?;
    Ok(frob(&(minus.full + plus.full)))
}

/// Residuals of
///
/// ```text
/// I − Ψ*Ψ = D_A (I + W*A)^{-1} (I − W*W) (I + A*W)^{-1} D_A
/// I − ΨΨ* = D_{A*} (I + WA*)^{-1} (I − WW*) (I + AW*)^{-1} D_{A*}
/// ```
///
/// with `Ψ = Ψ_A(W)`.
pub fn defect_identity_residuals(a: &CMat, w: &CMat, tol: &Tolerances) -> Result<(f64, f64)> {
    let r = psi_with(a, w, tol)?;
    let (p, q) = a.shape();
    let psi = &r.full;
    let singular = || Error::SingularResolvent {
        sigma_min: 0.0,
        condition: f64::INFINITY,
    };

    // (I + W*A)^{-1} = ((I + A*W)^{-1})*
    let m = solve(&(identity(q) + a.adjoint() * w), r.defects.big_d()).ok_or_else(singular)?;
    let rhs1 = m.adjoint() * (identity(q) - w.adjoint() * w) * &m;
    let lhs1 = identity(q) - psi.adjoint() * psi;

    let k = solve(&(identity(p) + a * w.adjoint()), r.defects.big_dstar()).ok_or_else(singular)?;
    let rhs2 = k.adjoint() * (identity(p) - w * w.adjoint()) * &k;
    let lhs2 = identity(p) - psi * psi.adjoint();

    Ok((frob(&(lhs1 - rhs1)), frob(&(lhs2 - rhs2))))
}

/// `Ω` and `Ω_*` written on orthonormal defect bases.
#[derive(Clone, Debug)]
pub struct OmegaPair {
    /// `Ω : 𝒟_{Ψ_A(W)} → 𝒟_W`, shape `rank(D_W) × rank(D_Ψ)`.
    pub omega: CMat,
    /// `Ω_* : 𝒟_{Ψ_A(W)*} → 𝒟_{W*}`.
    pub omega_star: CMat,
    /// `Ψ_A(W)` in ambient coordinates.
    pub psi: CMat,
    /// Defects of `Ψ_A(W)`; the domain bases of `Ω`, `Ω_*`.
    pub psi_defects: DefectPair,
    /// Defects of `W`; the codomain bases of `Ω`, `Ω_*`.
    pub w_defects: DefectPair,
    /// `‖Ω*Ω − I‖_F`, `‖Ω_*^*Ω_* − I‖_F`.
    pub omega_isometry_residual: f64,
    pub omega_star_isometry_residual: f64,
    /// `‖ΩΩ* − I‖_F` (∞ when `Ω` is not square).
    pub omega_coisometry_residual: f64,
    pub omega_star_coisometry_residual: f64,
    pub is_isometry: bool,
    pub star_is_isometry: bool,
    pub is_unitary: bool,
    pub star_is_unitary: bool,
}

impl OmegaPair {
    pub fn both_unitary(&self) -> bool {
        self.is_unitary && self.star_is_unitary
    }
}

fn coisometry_residual(u: &CMat) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    isometry_residual(&u.adjoint())
}

/// Solves `X · (B* D) = R` in the least-squares sense and checks that the
/// relation is consistent.
fn realize_on_span(domain_basis: &CMat, domain_defect: &CMat, rhs: &CMat) -> Result<CMat> {
    let g = domain_basis.adjoint() * domain_defect;
    let (x, residual) = solve_right_lstsq(&g, rhs);
    if residual > CONSISTENCY_TOL * frob(rhs).max(1.0) {
        return Err(Error::InconsistentDefinition { residual });
    }
    Ok(x)
}

/// Builds `Ω`, `Ω_*` from their defining relations
///
/// ```text
/// Ω   D_{Ψ_A(W)}  x = D_W     (I + A*W)^{-1} D_A     x
/// Ω_* D_{Ψ_A(W)*} x = D_{W*}  (I + AW*)^{-1} D_{A*}  x
/// ```
pub fn omega_pair(a: &CMat, w: &CMat, tol: &Tolerances) -> Result<OmegaPair> {
    let fr = psi_with(a, w, tol)?;
    let (p, q) = a.shape();
    let psi_defects = DefectPair::of_contraction(&fr.full, tol)?;
    let w_defects = DefectPair::of_contraction(w, tol)?;
    let singular = || Error::SingularResolvent {
        sigma_min: 0.0,
        condition: f64::INFINITY,
    };

    let inner = solve(&(identity(q) + a.adjoint() * w), fr.defects.big_d()).ok_or_else(singular)?;
    let rhs = w_defects.basis_d().adjoint() * w_defects.big_d() * inner;
    let omega = realize_on_span(psi_defects.basis_d(), psi_defects.big_d(), &rhs)?;

    let inner = solve(&(identity(p) + a * w.adjoint()), fr.defects.big_dstar()).ok_or_else(singular)?;
    let rhs = w_defects.basis_dstar().adjoint() * w_defects.big_dstar() * inner;
    let omega_star = realize_on_span(psi_defects.basis_dstar(), psi_defects.big_dstar(), &rhs)?;

    let omega_isometry_residual = isometry_residual(&omega);
    let omega_star_isometry_residual = isometry_residual(&omega_star);
    let omega_coisometry_residual = coisometry_residual(&omega);
    let omega_star_coisometry_residual = coisometry_residual(&omega_star);
    let is_isometry = omega_isometry_residual <= OMEGA_TOL;
    let star_is_isometry = omega_star_isometry_residual <= OMEGA_TOL;
    Ok(OmegaPair {
        is_unitary: is_isometry && omega_coisometry_residual <= OMEGA_TOL,
        star_is_unitary: star_is_isometry && omega_star_coisometry_residual <= OMEGA_TOL,
        is_isometry,
        star_is_isometry,
        omega,
        omega_star,
        psi: fr.full,
        psi_defects,
        w_defects,
        omega_isometry_residual,
        omega_star_isometry_residual,
        omega_coisometry_residual,
        omega_star_coisometry_residual,
    })
}

/// `‖Ω_* ψ_{Ψ_A(W)}(V) − ψ_W(Ψ_A(V)) Ω‖_F` with `Ω`, `Ω_*` built from `A`
/// and `W` alone.
///
/// Each of `I + VA*`, `I + WA*`, `I + Ψ_A(V)W*`, `I + VΨ_A(W)*` must be
/// invertible; the first one that is not is named in the error.
pub fn intertwining_residual(a: &CMat, w: &CMat, v: &CMat, tol: &Tolerances) -> Result<f64> {
    check_shapes(a, w)?;
    check_shapes(a, v)?;
    let p = a.nrows();
    let hypothesis = |which: &'static str, m: CMat| -> Result<()> {
        match resolvent_condition(&m, tol.inv) {
            Ok(_) => Ok(()),
            Err(Error::SingularResolvent { sigma_min, .. }) => {
                Err(Error::HypothesisViolated { which, sigma_min })
            }
            Err(e) => Err(e),
        }
    };
    hypothesis("I + VA*", identity(p) + v * a.adjoint())?;
    hypothesis("I + WA*", identity(p) + w * a.adjoint())?;

    let defects_a = DefectPair::of_contraction(a, tol)?;
    let (psi_v, _) = psi_full_with(a, v, &defects_a, tol.inv)?;
    let (psi_w, _) = psi_full_with(a, w, &defects_a, tol.inv)?;
    hypothesis("I + Ψ_A(V)W*", identity(p) + &psi_v * w.adjoint())?;
    hypothesis("I + VΨ_A(W)*", identity(p) + v * psi_w.adjoint())?;

    let op = omega_pair(a, w, tol)?;
    let (lhs_full, _) = psi_full_with(&op.psi, v, &op.psi_defects, tol.inv)?;
    let lhs = compress(&lhs_full, op.psi_defects.basis_dstar(), op.psi_defects.basis_d());
    let (rhs_full, _) = psi_full_with(w, &psi_v, &op.w_defects, tol.inv)?;
    let rhs = compress(&rhs_full, op.w_defects.basis_dstar(), op.w_defects.basis_d());

    Ok(frob(&(&op.omega_star * lhs - rhs * &op.omega)))
}
