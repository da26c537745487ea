//! Spherical tuples, kernel invariance of `A_∞` and preservation of the
//! classes under ball automorphisms.

use super::classify::{a_infinity, classify_with, ClassificationReport, ClassifyConfig};
use crate::ball::{apply_automorphism, phi_tuple, Automorphism, BallPoint};
use crate::opcore::{frob, op_norm, CMat, HermitianEigen, OperatorTuple, Tolerances};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalReport {
    /// `max_i ‖Z_i Z_i* − Z_i* Z_i‖_F`.
    pub normality_residual: f64,
    /// `‖Σ Z_i Z_i* − I‖_F`.
    pub unit_sum_residual: f64,
    pub commutator: f64,
    pub is_spherical: bool,
}

impl SphericalReport {
    pub fn max_residual(&self) -> f64 {
        self.normality_residual
            .max(self.unit_sum_residual)
            .max(self.commutator)
    }
}

/// Commuting normal tuple with `Σ Z_i Z_i* = I`.
pub fn spherical_check(z: &OperatorTuple, tol: f64) -> SphericalReport {
    let normality_residual = z
        .ops()
        .iter()
        .map(|m| frob(&(m * m.adjoint() - m.adjoint() * m)))
        .fold(0.0, f64::max);
    let unit_sum_residual = frob(&(z.row_gram() - CMat::identity(z.dim(), z.dim())));
    let commutator = z.max_commutator();
    SphericalReport {
        normality_residual,
        unit_sum_residual,
        commutator,
        is_spherical: normality_residual <= tol && unit_sum_residual <= tol && commutator <= tol,
    }
}

/// Spherical check of `φ_λ(Z)`.
pub fn spherical_preservation(
    z: &OperatorTuple,
    lambda: &BallPoint,
    tol: f64,
    tols: &Tolerances,
) -> Result<SphericalReport> {
    Ok(spherical_check(&phi_tuple(lambda, z, tols)?, tol))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelInvariance {
    /// `max_i ‖A_∞ T_i* K‖_F` for an orthonormal basis `K` of `ker A_∞`.
    pub kernel_residual: f64,
    /// Largest principal angle between `ker(I − A_∞(T))` and
    /// `ker(I − A_∞(φ_λ(T)))`; `π/2` when the dimensions differ.
    pub angle: f64,
    pub kernel_dim: usize,
    pub fixed_dim: usize,
}

impl KernelInvariance {
    pub fn max_residual(&self) -> f64 {
        self.kernel_residual.max(self.angle)
    }
}

fn separated(values: &[f64], cfg: &ClassifyConfig) -> Result<()> {
    let (tz, to) = (cfg.tol_zero, cfg.tol_one);
    for &v in values {
        if (v > tz && v < 10.0 * tz) || (v > 1.0 - 10.0 * to && v < 1.0 - to) {
            return Err(Error::Indeterminate(format!(
                "eigenvalue {v:e} of A_∞ lies in an ambiguity band"
            )));
        }
    }
    Ok(())
}

fn converged_a_inf(t: &OperatorTuple, cfg: &ClassifyConfig) -> Result<HermitianEigen> {
    let a = a_infinity(t, cfg.iter_tol, cfg.k_max);
    if !a.converged {
        return Err(Error::Indeterminate(format!(
            "A_∞ iteration did not converge in {} steps",
            a.iterations
        )));
    }
    let eig = HermitianEigen::new(&a.a_inf);
    separated(&eig.values, cfg)?;
    Ok(eig)
}

/// `ker A_∞` is `T*`-invariant, and `ker(I − A_∞)` is unchanged by `φ_λ`.
pub fn kernel_invariance_checks(
    t: &OperatorTuple,
    lambda: &BallPoint,
    cfg: &ClassifyConfig,
    tols: &Tolerances,
) -> Result<KernelInvariance> {
    let eig = converged_a_inf(t, cfg)?;
    let phi = phi_tuple(lambda, t, tols)?;
    let eig_phi = converged_a_inf(&phi, cfg)?;

    let a_inf = eig.map(|v| v);
    let kernel = eig.select(|v| v <= cfg.tol_zero);
    let kernel_residual = t
        .ops()
        .iter()
        .map(|ti| frob(&(&a_inf * ti.adjoint() * &kernel)))
        .fold(0.0, f64::max);

    let e1 = eig.select(|v| v >= 1.0 - cfg.tol_one);
    let e2 = eig_phi.select(|v| v >= 1.0 - cfg.tol_one);
    let angle = if e1.ncols() != e2.ncols() {
        std::f64::consts::FRAC_PI_2
    } else if e1.ncols() == 0 {
        0.0
    } else {
        let gap = &e1 * e1.adjoint() - &e2 * e2.adjoint();
        op_norm(&gap).min(1.0).asin()
    };
    Ok(KernelInvariance {
        kernel_residual,
        angle,
        kernel_dim: kernel.ncols(),
        fixed_dim: e1.ncols(),
    })
}

#[derive(Clone, Debug)]
pub struct ClassPreservation {
    pub before: ClassificationReport,
    pub after: ClassificationReport,
    pub agree: bool,
}

/// Classification of `T` and of `α(T)`; indeterminate flags are an error.
pub fn class_preservation_suite(
    t: &OperatorTuple,
    alpha: &Automorphism,
    cfg: &ClassifyConfig,
    tols: &Tolerances,
) -> Result<ClassPreservation> {
    let before = classify_with(t, cfg);
    let after = classify_with(&apply_automorphism(alpha, t, tols)?, cfg);
    for (which, r) in [("T", &before), ("α(T)", &after)] {
        if !r.determinate() {
            return Err(Error::Indeterminate(format!(
                "classification of {which} is indeterminate (eigenvalues {:e}..{:e}, converged {})",
                r.min_eig, r.max_eig, r.converged
            )));
        }
    }
    let agree = before.flags() == after.flags();
    Ok(ClassPreservation {
        before,
        after,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arveson::truncated_multishift;
    use crate::opcore::{c, random_commuting_tuple, seeded_rng};
    use crate::sample;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn coordinate_projections() {
        let mut p = CMat::zeros(2, 2);
        p[(0, 0)] = c(1.0, 0.0);
        let mut q = CMat::zeros(2, 2);
        q[(1, 1)] = c(1.0, 0.0);
        let z = OperatorTuple::new(vec![p, q]).unwrap();
        assert!(spherical_check(&z, 1e-12).is_spherical);
    }

    #[test]
    fn preserved_under_involution() {
        let mut rng = seeded_rng(14);
        for _ in 0..10 {
            let z = sample::random_spherical_diagonal(3, 2, &mut rng);
            let l = sample::random_ball_point(2, 0.8, &mut rng);
            assert!(spherical_preservation(&z, &l, 1e-9, &tol()).unwrap().is_spherical);
        }
    }

    #[test]
    fn multishift_is_not_spherical() {
        let r = spherical_check(&truncated_multishift(2, 2, 1), 1e-9);
        assert!(!r.is_spherical);
        assert!(r.unit_sum_residual > 0.5);
    }

    #[test]
    fn mixed_kernel_structure() {
        let mut rng = seeded_rng(15);
        let t = sample::random_mixed_tuple(3, 2, 2, &mut rng);
        let l = sample::random_ball_point(2, 0.6, &mut rng);
        let k = kernel_invariance_checks(&t, &l, &ClassifyConfig::default(), &tol()).unwrap();
        assert_eq!((k.kernel_dim, k.fixed_dim), (3, 2));
        assert!(k.max_residual() < 1e-8, "{k:?}");
    }

    #[test]
    fn spherical_fixed_space_is_everything() {
        let mut rng = seeded_rng(16);
        let z = sample::random_spherical_diagonal(3, 2, &mut rng);
        let l = sample::random_ball_point(2, 0.6, &mut rng);
        let k = kernel_invariance_checks(&z, &l, &ClassifyConfig::default(), &tol()).unwrap();
        assert_eq!(k.fixed_dim, 3);
        assert!(k.angle < 1e-9);
    }

    #[test]
    fn classes_survive_automorphisms() {
        let mut rng = seeded_rng(17);
        let cfg = ClassifyConfig::default();
        let cases = vec![
            truncated_multishift(2, 3, 1),
            sample::random_spherical_diagonal(3, 2, &mut rng),
            random_commuting_tuple(4, 2, 3, 0.1),
        ];
        for t in cases {
            let alpha = sample::random_automorphism(2, 0.7, &mut rng);
            assert!(class_preservation_suite(&t, &alpha, &cfg, &tol()).unwrap().agree);
        }
    }
}
