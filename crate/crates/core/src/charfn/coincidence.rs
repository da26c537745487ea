//! Coincidence of characteristic functions under supplied unitaries, and
//! the certificates for the automorphism theorems.

use super::CharacteristicFunction;
use crate::ball::{
    apply_unitary, eval_inverse, phi_point, phi_tuple, Automorphism, BallPoint,
};
use crate::fractional::omega_pair;
use crate::opcore::linalg::{frob, unitarity_residual};
use crate::opcore::{CMat, OperatorTuple, Tolerances};
use crate::{Error, Result};

/// Unitarity threshold for the theorem intertwiners.
const UNITARY_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CoincidenceCertificate {
    pub omega1: CMat,
    pub omega2: CMat,
    pub sample_points: Vec<BallPoint>,
    /// `max_z ‖Ω₂ Θ(z) − Θ′(z) Ω₁‖_F`.
    pub max_residual: f64,
}

impl CoincidenceCertificate {
    /// `max(‖Ω₁Ω₁* − I‖, ‖Ω₂Ω₂* − I‖, …)` over both unitarity conditions.
    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.omega1).max(unitarity_residual(&self.omega2))
    }
}

/// Certifies `Ω₂ Θ(z) = Θ′(z) Ω₁` on the sample points.
pub fn coincidence_residual<A, B>(
    theta: A,
    theta_prime: B,
    omega1: &CMat,
    omega2: &CMat,
    samples: &[BallPoint],
) -> Result<CoincidenceCertificate>
where
    A: Fn(&BallPoint) -> Result<CMat>,
    B: Fn(&BallPoint) -> Result<CMat>,
{
    let mut max_residual: f64 = 0.0;
    for z in samples {
        let lhs_fn = theta(z)?;
        let rhs_fn = theta_prime(z)?;
        if omega2.ncols() != lhs_fn.nrows()
            || omega1.nrows() != rhs_fn.ncols()
            || omega2.nrows() != rhs_fn.nrows()
            || omega1.ncols() != lhs_fn.ncols()
        {
            return Err(Error::ShapeMismatch(format!(
                "Ω₂ {}×{}, Θ {}×{}, Θ′ {}×{}, Ω₁ {}×{}",
                omega2.nrows(),
                omega2.ncols(),
                lhs_fn.nrows(),
                lhs_fn.ncols(),
                rhs_fn.nrows(),
                rhs_fn.ncols(),
                omega1.nrows(),
                omega1.ncols()
            )));
        }
        let r = frob(&(omega2 * lhs_fn - rhs_fn * omega1));
        max_residual = max_residual.max(if r.is_nan() { f64::INFINITY } else { r });
    }
    Ok(CoincidenceCertificate {
        omega1: omega1.clone(),
        omega2: omega2.clone(),
        sample_points: samples.to_vec(),
        max_residual,
    })
}

/// `Ω`, `Ω_*` of the pair `(𝛌, −T)`, rewritten on the defect bases used by
/// the characteristic functions of `T` and `φ_λ(T)`.
#[derive(Clone, Debug)]
pub struct TheoremOmegas {
    pub theta_t: CharacteristicFunction,
    pub theta_phi: CharacteristicFunction,
    /// `Ω : 𝒟_{φ_λ(T)} → 𝒟_T`.
    pub omega: CMat,
    /// `Ω_* : 𝒟_{φ_λ(T)*} → 𝒟_{T*}`.
    pub omega_star: CMat,
}

impl TheoremOmegas {
    pub fn unitarity_residuals(&self) -> (f64, f64) {
        (
            unitarity_residual(&self.omega),
            unitarity_residual(&self.omega_star),
        )
    }
}

pub fn theorem_omegas(
    t: &OperatorTuple,
    lambda: &BallPoint,
    tol: &Tolerances,
) -> Result<TheoremOmegas> {
    let phi = phi_tuple(lambda, t, tol)?;
    let theta_t = CharacteristicFunction::new(t, tol)?;
    let theta_phi = CharacteristicFunction::new(&phi, tol)?;
    let pair = omega_pair(&lambda.amplify(t.dim()), &-t.row(), tol)?;

    let (td, pd) = (theta_t.defects(), theta_phi.defects());
    let (wd, sd) = (&pair.w_defects, &pair.psi_defects);
    let omega = td.basis_d().adjoint() * wd.basis_d()
        * &pair.omega
        * sd.basis_d().adjoint()
        * pd.basis_d();
    let omega_star = td.basis_dstar().adjoint() * wd.basis_dstar()
        * &pair.omega_star
        * sd.basis_dstar().adjoint()
        * pd.basis_dstar();
    Ok(TheoremOmegas {
        theta_t,
        theta_phi,
        omega,
        omega_star,
    })
}

/// `θ_{φ_λ(T)}` coincides with `θ_T ∘ φ_λ`.
///
/// The defining relations of `Ω`, `Ω_*` give `Ω_* θ_{φ_λ(T)}(z) =
/// −θ_T(φ_λ(z)) Ω`; the sign is absorbed into `Ω₂ = −Ω_*`, which is unitary
/// whenever `Ω_*` is.
pub fn theorem_theta_check(
    t: &OperatorTuple,
    lambda: &BallPoint,
    samples: &[BallPoint],
    tol: &Tolerances,
) -> Result<CoincidenceCertificate> {
    let th = theorem_omegas(t, lambda, tol)?;
    let (ro, rs) = th.unitarity_residuals();
    if ro > UNITARY_TOL || rs > UNITARY_TOL {
        return Err(Error::UnitarityFailure {
            omega: ro,
            omega_star: rs,
        });
    }
    coincidence_residual(
        |z| th.theta_phi.eval(z),
        |z| th.theta_t.eval(&phi_point(lambda, z)?),
        &th.omega,
        &-&th.omega_star,
        samples,
    )
}

/// Intertwiners for `T′ = T(I ⊗ ω)`: `Ω₁ = B_T* (I ⊗ ω) B_{T′}` and
/// `Ω₂ = B_{T*}* B_{T′*}`.
fn lemma_omegas(
    theta_t: &CharacteristicFunction,
    theta_tp: &CharacteristicFunction,
    omega: &CMat,
) -> (CMat, CMat) {
    let d = theta_t.tuple().dim();
    let k = omega.kronecker(&CMat::identity(d, d));
    let (a, b) = (theta_t.defects(), theta_tp.defects());
    (
        a.basis_d().adjoint() * k * b.basis_d(),
        a.basis_dstar().adjoint() * b.basis_dstar(),
    )
}

/// `θ_{T′}(z)` coincides with `θ_T(zω*)` for `T′ = T(I ⊗ ω)`.
pub fn lemma_omega_check(
    t: &OperatorTuple,
    omega: &CMat,
    samples: &[BallPoint],
    tol: &Tolerances,
) -> Result<CoincidenceCertificate> {
    let tp = apply_unitary(t, omega)?;
    let theta_t = CharacteristicFunction::new(t, tol)?;
    let theta_tp = CharacteristicFunction::new(&tp, tol)?;
    let (omega1, omega2) = lemma_omegas(&theta_t, &theta_tp, omega);
    let omega_adj = omega.adjoint();
    coincidence_residual(
        |z| theta_tp.eval(z),
        |z| theta_t.eval(&z.times(&omega_adj)),
        &omega1,
        &omega2,
        samples,
    )
}

/// `θ_{α(T)}` coincides with `θ_T ∘ α^{-1}`, with intertwiners composed from
/// the two previous checks.
pub fn automorphism_theta_check(
    t: &OperatorTuple,
    alpha: &Automorphism,
    samples: &[BallPoint],
    tol: &Tolerances,
) -> Result<CoincidenceCertificate> {
    let th = theorem_omegas(t, alpha.center(), tol)?;
    let (ro, rs) = th.unitarity_residuals();
    if ro > UNITARY_TOL || rs > UNITARY_TOL {
        return Err(Error::UnitarityFailure {
            omega: ro,
            omega_star: rs,
        });
    }
    let image = apply_unitary(th.theta_phi.tuple(), alpha.unitary())?;
    let theta_image = CharacteristicFunction::new(&image, tol)?;
    let (u1, u2) = lemma_omegas(&th.theta_phi, &theta_image, alpha.unitary());
    let omega1 = &th.omega * u1;
    let omega2 = -&th.omega_star * u2;
    coincidence_residual(
        |z| theta_image.eval(z),
        |z| th.theta_t.eval(&eval_inverse(alpha, z)?),
        &omega1,
        &omega2,
        samples,
    )
}
