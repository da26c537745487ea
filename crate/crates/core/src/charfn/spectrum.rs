//! Right spectrum and its relation to surjectivity of `θ_T`.

use super::CharacteristicFunction;
use crate::ball::BallPoint;
use crate::opcore::{CMat, HermitianEigen, OperatorTuple, Tolerances, C64};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaRWitness {
    pub member: bool,
    /// Smallest eigenvalue of `Σ (T_i − λ_i)(T_i − λ_i)*`.
    pub min_eigenvalue: f64,
}

/// `λ ∈ σ_r(T)` iff `Σ (T_i − λ_i)(T_i − λ_i)*` is singular.
pub fn sigma_r_member(t: &OperatorTuple, lambda: &[C64], tol: f64) -> Result<SigmaRWitness> {
    if lambda.len() != t.n() {
        return Err(Error::ShapeMismatch(format!(
            "λ ∈ ℂ^{} but T is a {}-tuple",
            lambda.len(),
            t.n()
        )));
    }
    let d = t.dim();
    let gram = t
        .ops()
        .iter()
        .zip(lambda)
        .fold(CMat::zeros(d, d), |acc, (ti, &l)| {
            let shifted = ti - CMat::identity(d, d) * l;
            acc + &shifted * shifted.adjoint()
        });
    let min_eigenvalue = HermitianEigen::new(&gram).min();
    Ok(SigmaRWitness {
        member: min_eigenvalue <= tol,
        min_eigenvalue,
    })
}

/// Smallest eigenvalue of `θ_T(z)θ_T(z)*` on `𝒟_{T*}` (`+∞` when
/// `𝒟_{T*} = 0`). `θ_T(z)` is onto iff this is positive.
pub fn theta_surjectivity(cf: &CharacteristicFunction, z: &BallPoint) -> Result<f64> {
    let th = cf.eval(z)?;
    if th.nrows() == 0 {
        return Ok(f64::INFINITY);
    }
    Ok(HermitianEigen::new(&(&th * th.adjoint())).min())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumConsistency {
    pub in_sigma_r: bool,
    pub theta_not_surjective: bool,
    pub min_eigenvalue: f64,
    pub theta_min_eigenvalue: f64,
    pub agree: bool,
}

/// Compares `λ ∈ σ_r(T)` with non-surjectivity of `θ_T(λ)`.
///
/// `θ_T(λ)` is unitarily equivalent to `−φ_λ(T)` on its defect spaces, and
/// `λ ∈ σ_r(T)` iff `0 ∈ σ_r(φ_λ(T))`, so the evaluation point is `+λ`
/// (on `ℂ¹` with `T = 0.4`, `θ_T(0.4) = 0` while `θ_T(−0.4) ≠ 0`).
pub fn spectrum_charfn_consistency(
    t: &OperatorTuple,
    lambda: &BallPoint,
    tol: f64,
    tols: &Tolerances,
) -> Result<SpectrumConsistency> {
    let witness = sigma_r_member(t, lambda.coords(), tol)?;
    let cf = CharacteristicFunction::new(t, tols)?;
    let theta_min = theta_surjectivity(&cf, lambda)?;
    let band = |v: f64| v > tol && v < 10.0 * tol;
    if band(witness.min_eigenvalue) || band(theta_min) {
        return Err(Error::ToleranceAmbiguous(format!(
            "λ_min = {:e}, θ θ* min = {:e}, band ({tol:e}, {:e})",
            witness.min_eigenvalue,
            theta_min,
            10.0 * tol
        )));
    }
    let theta_not_surjective = theta_min <= tol;
    Ok(SpectrumConsistency {
        in_sigma_r: witness.member,
        theta_not_surjective,
        min_eigenvalue: witness.min_eigenvalue,
        theta_min_eigenvalue: theta_min,
        agree: witness.member == theta_not_surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arveson::truncated_multishift;
    use crate::opcore::c;

    #[test]
    fn diagonal_membership() {
        let t = OperatorTuple::new(vec![CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(0.3, 0.0),
            c(0.0, 0.5),
        ]))])
        .unwrap();
        assert!(sigma_r_member(&t, &[c(0.3, 0.0)], 1e-8).unwrap().member);
        assert!(!sigma_r_member(&t, &[c(0.9, 0.0)], 1e-8).unwrap().member);
    }

    #[test]
    fn multishift_contains_origin() {
        let s = truncated_multishift(2, 3, 1);
        assert!(sigma_r_member(&s, &[c(0.0, 0.0), c(0.0, 0.0)], 1e-8).unwrap().member);
    }

    #[test]
    fn scalar_eigenvalue() {
        let t = OperatorTuple::scalar(&[c(0.4, 0.0)]).unwrap();
        let l = BallPoint::from_real(&[0.4]);
        let r = spectrum_charfn_consistency(&t, &l, 1e-8, &Tolerances::default()).unwrap();
        assert!(r.in_sigma_r && r.theta_not_surjective && r.agree);

        // the opposite evaluation point is onto
        let cf = CharacteristicFunction::new(&t, &Tolerances::default()).unwrap();
        let opposite = theta_surjectivity(&cf, &l.neg()).unwrap();
        assert!(opposite > 0.4);
    }

    #[test]
    fn strict_contraction_off_spectrum() {
        let t = OperatorTuple::scalar(&[c(0.2, 0.1), c(0.1, 0.0)]).unwrap();
        let l = BallPoint::from_real(&[-0.5, 0.3]);
        let r = spectrum_charfn_consistency(&t, &l, 1e-8, &Tolerances::default()).unwrap();
        assert!(!r.in_sigma_r && !r.theta_not_surjective);
    }
}
