//! Functional model of pure tuples on a truncation where it is exact.

use super::classify::{classify_with, ClassifyConfig};
use super::shift::multishift_on;
use super::space::TruncatedSpace;
use super::theorem_a::l_and_m;
use crate::ball::BallPoint;
use crate::charfn::CharacteristicFunction;
use crate::opcore::linalg::solve_right_lstsq;
use crate::opcore::{frob, op_norm, unitarity_residual, CMat, HermitianEigen, OperatorTuple, Tolerances};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ModelData {
    pub space: TruncatedSpace,
    /// Orthonormal basis of `𝐇_T = 𝐇_N(𝒟_{T*}) ⊖ ran M_N`.
    pub basis_ht: CMat,
    /// `𝕋_i = P_{𝐇_T} S_i |𝐇_T` on `basis_ht`.
    pub model_tuple: OperatorTuple,
    /// `Φ : H → 𝐇_T` determined by `Φ L_N f = P_{𝐇_T} f`.
    pub phi: CMat,
    /// `‖Φ*Φ − I‖`, `‖ΦΦ* − I‖` (max).
    pub phi_unitarity: f64,
    /// `‖v_** Φ − L_N*‖_F`, with `v_*` the inclusion of `𝐇_T`.
    pub adjoint_residual: f64,
    /// `max_i ‖Φ T_i* − 𝕋_i* Φ‖_F`.
    pub intertwining_residual: f64,
}

/// Builds the model of a pure tuple at truncation degree `max_degree`.
///
/// Exact when `T^α = 0` for `|α| > max_degree`; otherwise the dimension of
/// the model space is checked against `dim H` and a mismatch is an error.
pub fn model_space(
    t: &OperatorTuple,
    max_degree: usize,
    tol: &Tolerances,
    cfg: &ClassifyConfig,
) -> Result<ModelData> {
    let report = classify_with(t, cfg);
    match report.is_pure {
        Some(true) => {}
        Some(false) => return Err(Error::NotPure),
        None => {
            return Err(Error::Indeterminate(format!(
                "largest eigenvalue of A_∞ is {:e}",
                report.max_eig
            )))
        }
    }
    let space = TruncatedSpace::new(t.n(), max_degree);
    let (l, m) = l_and_m(t, &space, tol)?;
    let gram = &m * m.adjoint();
    // M_N M_N* = I − L_N* L_N is a projection here
    let basis_ht = HermitianEigen::new(&gram).select(|v| v < 0.5);
    if basis_ht.ncols() != t.dim() {
        return Err(Error::TruncationUnsound {
            got: basis_ht.ncols(),
            expected: t.dim(),
        });
    }

    let shift = multishift_on(&space, l.r_star);
    let ops = shift
        .ops()
        .iter()
        .map(|s| basis_ht.adjoint() * s * &basis_ht)
        .collect();
    let model_tuple = OperatorTuple::new(ops)?;

    let (phi, _) = solve_right_lstsq(&l.mat, &basis_ht.adjoint());
    let adjoint_residual = frob(&(&basis_ht * &phi - l.mat.adjoint()));
    let intertwining_residual = t
        .ops()
        .iter()
        .zip(model_tuple.ops())
        .map(|(ti, mi)| frob(&(&phi * ti.adjoint() - mi.adjoint() * &phi)))
        .fold(0.0, f64::max);
    Ok(ModelData {
        phi_unitarity: unitarity_residual(&phi),
        space,
        basis_ht,
        model_tuple,
        phi,
        adjoint_residual,
        intertwining_residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaZeroReport {
    pub is_zero: bool,
    /// `max_z ‖θ_T(z)‖` over the samples.
    pub max_norm: f64,
}

/// Tests `θ_T ≡ 0` on sample points, the criterion for `T` to be a
/// multishift. Only meaningful for pure or c.n.c. tuples.
///
/// A finite-dimensional tuple never passes: `θ_T ≡ 0` forces either
/// `𝒟_T = 0` or `𝒟_{T*} = 0`, and neither is compatible with purity or
/// complete non-coisometry in finite dimensions (for `n ≥ 2`).
pub fn theta_zero_multishift_check(
    t: &OperatorTuple,
    samples: &[BallPoint],
    tol: f64,
    tols: &Tolerances,
    cfg: &ClassifyConfig,
) -> Result<ThetaZeroReport> {
    let report = classify_with(t, cfg);
    if report.is_pure != Some(true) && report.is_cnc != Some(true) {
        return Err(Error::PreconditionUnclassified(format!(
            "tuple is neither pure nor c.n.c. (pure: {:?}, c.n.c.: {:?})",
            report.is_pure, report.is_cnc
        )));
    }
    let cf = CharacteristicFunction::new(t, tols)?;
    let mut max_norm: f64 = 0.0;
    for z in samples {
        max_norm = max_norm.max(op_norm(&cf.eval(z)?));
    }
    Ok(ThetaZeroReport {
        is_zero: max_norm <= tol,
        max_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arveson::truncated_multishift;
    use crate::opcore::{c, random_nilpotent_tuple, validate_tuple, word_trace_invariants};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn zero_scalar() {
        let t = OperatorTuple::scalar(&[c(0.0, 0.0)]).unwrap();
        let m = model_space(&t, 2, &tol(), &ClassifyConfig::default()).unwrap();
        assert_eq!(m.basis_ht.ncols(), 1);
        assert!(m.model_tuple.op(0)[(0, 0)].norm() < 1e-15);
        assert!(m.phi_unitarity < 1e-12);
    }

    #[test]
    fn jordan_block() {
        let mut j = CMat::zeros(2, 2);
        j[(0, 1)] = c(1.0, 0.0);
        let t = OperatorTuple::new(vec![j]).unwrap();
        let m = model_space(&t, 3, &tol(), &ClassifyConfig::default()).unwrap();
        assert_eq!(m.basis_ht.ncols(), 2);
        let a = word_trace_invariants(&t, 4);
        let b = word_trace_invariants(&m.model_tuple, 4);
        assert!(a.max_distance(&b).unwrap() < 1e-9);
    }

    #[test]
    fn nilpotent_pair() {
        let t = random_nilpotent_tuple(3, 2, 4, 0.1);
        let m = model_space(&t, 4, &tol(), &ClassifyConfig::default()).unwrap();
        assert!(m.phi_unitarity < 1e-9);
        assert!(m.intertwining_residual < 1e-9);
        assert!(m.adjoint_residual < 1e-9);
        assert!(validate_tuple(&m.model_tuple, 1e-9, 1e-9).pass);
    }

    #[test]
    fn short_truncation_is_refused() {
        let mut j = CMat::zeros(3, 3);
        j[(0, 1)] = c(0.9, 0.0);
        j[(1, 2)] = c(0.9, 0.0);
        let t = OperatorTuple::new(vec![j]).unwrap();
        assert!(matches!(
            model_space(&t, 1, &tol(), &ClassifyConfig::default()),
            Err(Error::TruncationUnsound { .. })
        ));
    }

    #[test]
    fn theta_zero_cases() {
        let samples = vec![BallPoint::from_real(&[0.3, 0.1]), BallPoint::from_real(&[-0.2, 0.5])];
        let zero = OperatorTuple::new(vec![CMat::zeros(2, 2), CMat::zeros(2, 2)]).unwrap();
        let cfg = ClassifyConfig::default();
        let r = theta_zero_multishift_check(&zero, &samples, 1e-8, &tol(), &cfg).unwrap();
        assert!(!r.is_zero);
        let s = truncated_multishift(2, 2, 1);
        let r = theta_zero_multishift_check(&s, &samples, 1e-8, &tol(), &cfg).unwrap();
        assert!(!r.is_zero);
        let u = OperatorTuple::scalar(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert!(matches!(
            theta_zero_multishift_check(&u, &samples, 1e-8, &tol(), &cfg),
            Err(Error::PreconditionUnclassified(_))
        ));
    }
}
