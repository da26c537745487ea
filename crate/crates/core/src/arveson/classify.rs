use serde::Serialize;

use crate::ball::rho;
use crate::opcore::{frob, CMat, HermitianEigen, OperatorTuple};

/// Iteration limits and decision thresholds for [`classify_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyConfig {
    pub iter_tol: f64,
    pub k_max: usize,
    pub tol_zero: f64,
    pub tol_one: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            iter_tol: 1e-13,
            k_max: 20_000,
            tol_zero: 1e-8,
            tol_one: 1e-8,
        }
    }
}

/// The limit `A_∞ = lim ρ_T^k(I)` and how it was reached.
#[derive(Clone, Debug)]
pub struct AInfinity {
    pub a_inf: CMat,
    /// Number of applications of `ρ_T`.
    pub iterations: usize,
    pub converged: bool,
    pub last_delta: f64,
    /// Smallest eigenvalue of `X_k − X_{k+1}` over all steps.
    pub min_decrease: f64,
    pub min_eig: f64,
    pub max_eig: f64,
}

impl AInfinity {
    /// `X_{k+1} ≤ X_k` up to `tol` along the whole iteration.
    pub fn monotone(&self, tol: f64) -> bool {
        self.min_decrease >= -tol
    }
}

/// Iterates `X_{k+1} = ρ_T(X_k)` from `X_0 = I` until `‖X_{k+1} − X_k‖_F`
/// or `‖X_{k+1}‖_F` drops below `iter_tol`.
pub fn a_infinity(t: &OperatorTuple, iter_tol: f64, k_max: usize) -> AInfinity {
    let d = t.dim();
    let mut x = CMat::identity(d, d);
    let mut min_decrease = f64::INFINITY;
    let mut last_delta = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < k_max {
        let next = rho(t, &x);
        let diff = &x - &next;
        last_delta = frob(&diff);
        min_decrease = min_decrease.min(HermitianEigen::new(&diff).min());
        x = next;
        iterations += 1;
        if last_delta < iter_tol || frob(&x) < iter_tol {
            converged = true;
            break;
        }
    }
    let eig = HermitianEigen::new(&x);
    AInfinity {
        min_eig: eig.min(),
        max_eig: eig.max(),
        a_inf: x,
        iterations,
        converged,
        last_delta,
        min_decrease,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    #[serde(skip)]
    pub a_inf: CMat,
    pub iterations: usize,
    pub converged: bool,
    pub last_delta: f64,
    pub monotone: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    /// `None` when the eigenvalues sit in an ambiguity band or the
    /// iteration did not converge.
    pub is_pure: Option<bool>,
    #[serde(rename = "isC1")]
    pub is_c1: Option<bool>,
    pub is_cnc: Option<bool>,
}

impl ClassificationReport {
    pub fn flags(&self) -> [Option<bool>; 3] {
        [self.is_pure, self.is_c1, self.is_cnc]
    }

    pub fn determinate(&self) -> bool {
        self.flags().iter().all(Option::is_some)
    }
}

/// `v ≤ lo` ⇒ `Some(true)`, `v ≥ hi` ⇒ `Some(false)`, otherwise `None`.
fn decide_below(v: f64, lo: f64, hi: f64) -> Option<bool> {
    if v <= lo {
        Some(true)
    } else if v >= hi {
        Some(false)
    } else {
        None
    }
}

pub fn classify_with(t: &OperatorTuple, cfg: &ClassifyConfig) -> ClassificationReport {
    let a = a_infinity(t, cfg.iter_tol, cfg.k_max);
    let (tz, to) = (cfg.tol_zero, cfg.tol_one);
    let (is_pure, is_c1, is_cnc) = if a.converged {
        (
            decide_below(a.max_eig, tz, 10.0 * tz),
            decide_below(a.min_eig, tz, 10.0 * tz).map(|zero| !zero),
            decide_below(a.max_eig, 1.0 - 10.0 * to, 1.0 - to),
        )
    } else {
        (None, None, None)
    };
    ClassificationReport {
        monotone: a.monotone(1e-10),
        a_inf: a.a_inf,
        iterations: a.iterations,
        converged: a.converged,
        last_delta: a.last_delta,
        min_eig: a.min_eig,
        max_eig: a.max_eig,
        is_pure,
        is_c1,
        is_cnc,
    }
}

/// Classification with the default iteration limits.
pub fn classify(t: &OperatorTuple, tol_zero: f64, tol_one: f64) -> ClassificationReport {
    classify_with(
        t,
        &ClassifyConfig {
            tol_zero,
            tol_one,
            ..ClassifyConfig::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arveson::truncated_multishift;
    use crate::opcore::{c, random_commuting_tuple, seeded_rng};
    use crate::sample;

    #[test]
    fn unitary_scalar() {
        let t = OperatorTuple::scalar(&[c(1.0, 0.0)]).unwrap();
        let a = a_infinity(&t, 1e-13, 100);
        assert!(a.converged);
        assert_eq!(a.iterations, 1);
        assert_eq!(a.a_inf[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn strict_contraction_is_pure() {
        let t = random_commuting_tuple(4, 2, 3, 0.1);
        let r = classify(&t, 1e-8, 1e-8);
        assert!(r.converged && r.monotone);
        assert_eq!(r.flags(), [Some(true), Some(false), Some(true)]);
        // ρ^k(I) ≤ ‖T‖^{2k} I
        let bound = 0.81f64.powi(r.iterations as i32);
        assert!(r.max_eig <= bound + 1e-15);
    }

    #[test]
    fn multishift_hits_zero() {
        for big_n in 1..=4 {
            let s = truncated_multishift(2, big_n, 1);
            let a = a_infinity(&s, 1e-13, 100);
            assert_eq!(a.iterations, big_n + 1);
            assert_eq!(frob(&a.a_inf), 0.0);
        }
        let r = classify(&truncated_multishift(3, 3, 1), 1e-8, 1e-8);
        assert_eq!(r.is_pure, Some(true));
        assert_eq!(r.is_cnc, Some(true));
    }

    #[test]
    fn spherical_and_mixed() {
        let mut rng = seeded_rng(5);
        let z = sample::random_spherical_diagonal(3, 2, &mut rng);
        let r = classify(&z, 1e-8, 1e-8);
        assert_eq!(r.flags(), [Some(false), Some(true), Some(false)]);
        let s = truncated_multishift(2, 2, 1);
        let sum = s.direct_sum(&z).unwrap();
        let r = classify(&sum, 1e-8, 1e-8);
        assert_eq!(r.flags(), [Some(false), Some(false), Some(false)]);
    }

    #[test]
    fn ambiguity_band() {
        let t = OperatorTuple::scalar(&[c(1.0 - 3e-8, 0.0)]).unwrap();
        let r = classify_with(
            &t,
            &ClassifyConfig {
                k_max: 5,
                ..ClassifyConfig::default()
            },
        );
        assert!(!r.converged);
        assert!(!r.determinate());
    }
}
