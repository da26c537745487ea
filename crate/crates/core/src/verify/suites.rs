use rand::Rng as _;

use super::{Suite, SuiteConfig, TrialResult};
use crate::arveson::{
    a_infinity, class_preservation_suite, identity_la_partial, identity_lth_truncated,
    kernel_invariance_checks, model_space, spherical_preservation, truncated_multishift,
    ClassifyConfig,
};
use crate::ball::{
    apply_unitary, phi_point, phi_psi_agreement, rho_invariance_residual, BallPoint,
};
use crate::charfn::{
    automorphism_theta_check, lemma_omega_check, spectrum_charfn_consistency, theorem_omegas,
    theorem_theta_check,
};
use crate::fractional::{
    defect_identity_residuals, intertwining_residual, psi_minus_symmetry_residual,
    resolvent_condition,
};
use crate::opcore::{
    frob, identity, random_commuting_tuple, random_nilpotent_tuple, random_unitary, seeded_rng,
    word_trace_invariants, CMat, OperatorTuple, Rng, Tolerances,
};
use crate::sample;
use crate::Error;

/// Condition-number ceiling for the random fractional-transform instances.
const MAX_COND: f64 = 1e6;

/// Number of sample points per coincidence certificate.
const Z_SAMPLES: usize = 20;

/// Tolerance for the right-spectrum decision.
const SPECTRUM_TOL: f64 = 1e-8;

/// Minimum distance between a planted joint eigenvalue and the others.
const SPECTRAL_GAP: f64 = 0.05;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn random_tuple(rng: &mut Rng, cfg: &SuiteConfig) -> OperatorTuple {
    let dim = rng.random_range(1..=cfg.max_dim);
    let n = rng.random_range(1..=cfg.max_n);
    let margin = rng.random_range(0.02..0.4);
    random_commuting_tuple(dim, n, rng.random(), margin)
}

fn samples(n: usize, rng: &mut Rng) -> Vec<BallPoint> {
    (0..Z_SAMPLES).map(|_| sample::random_ball_point(n, 0.9, rng)).collect()
}

/// `(A, W)` of a random shape up to 5×5 with `cond(I + WA*) ≤ MAX_COND`,
/// or `None`.
fn contraction_pair(rng: &mut Rng, isometric_w: bool) -> Option<(CMat, CMat)> {
    let p = rng.random_range(1..=5);
    let q = rng.random_range(1..=5);
    let a = sample::random_contraction(p, q, rng.random_range(0.05..0.999), rng);
    let w = if isometric_w {
        if p >= q {
            sample::random_isometry(p, q, rng)
        } else {
            sample::random_isometry(q, p, rng).adjoint()
        }
    } else {
        sample::random_contraction(p, q, rng.random_range(0.05..0.999), rng)
    };
    let resolvent = identity(p) + &w * a.adjoint();
    resolvent_condition(&resolvent, 1.0 / MAX_COND).ok()?;
    Some((a, w))
}

fn lemma_4_1(seed: u64, k: usize, _: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let Some((a, w)) = contraction_pair(&mut rng, k.is_multiple_of(4)) else {
        return Ok(None);
    };
    let (r1, r2) = defect_identity_residuals(&a, &w, &tol())?;
    Ok(Some(r1.max(r2)))
}

fn eq_4_5(seed: u64, _: usize, _: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let Some((a, w)) = contraction_pair(&mut rng, false) else {
        return Ok(None);
    };
    Ok(Some(psi_minus_symmetry_residual(&a, &w, &tol())?))
}

fn prop_4_3(seed: u64, _: usize, _: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let p = rng.random_range(1..=4);
    let q = rng.random_range(1..=4);
    let draw = |rng: &mut Rng| sample::random_contraction(p, q, rng.random_range(0.05..0.7), rng);
    let (a, w, v) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
    match intertwining_residual(&a, &w, &v, &tol()) {
        Ok(r) => Ok(Some(r)),
        Err(Error::HypothesisViolated { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn prop_5_1(seed: u64, _: usize, _: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let n = rng.random_range(1..=4);
    let lambda = sample::random_ball_point(n, 0.9, &mut rng);
    let z = sample::random_ball_point(n, 0.95, &mut rng);
    let agreement = phi_psi_agreement(&lambda, &z, &tol())?;
    let back = phi_point(&lambda, &phi_point(&lambda, &z)?)?;
    let sphere = sample::random_sphere_point(n, &mut rng);
    let on_sphere = (phi_point(&lambda, &sphere)?.norm() - 1.0).abs();
    let sphere_agreement = phi_psi_agreement(&lambda, &sphere, &tol())?;
    Ok(Some(
        agreement
            .max(back.distance(&z))
            .max(on_sphere)
            .max(sphere_agreement),
    ))
}

fn theorem_5_3(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = random_tuple(&mut rng, cfg);
    let lambda = sample::random_ball_point(t.n(), 0.8, &mut rng);
    let zs = samples(t.n(), &mut rng);
    Ok(Some(theorem_theta_check(&t, &lambda, &zs, &tol())?.max_residual))
}

fn theorem_5_3_unitary(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = random_tuple(&mut rng, cfg);
    let lambda = sample::random_ball_point(t.n(), 0.8, &mut rng);
    let (a, b) = theorem_omegas(&t, &lambda, &tol())?.unitarity_residuals();
    Ok(Some(a.max(b)))
}

fn lemma_6_1(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = random_tuple(&mut rng, cfg);
    let omega = random_unitary(t.n(), &mut rng);
    let zs = samples(t.n(), &mut rng);
    let cert = lemma_omega_check(&t, &omega, &zs, &tol())?;
    Ok(Some(cert.max_residual.max(cert.unitarity_residual())))
}

fn cor_6_2(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = random_tuple(&mut rng, cfg);
    let omega = random_unitary(t.n(), &mut rng);
    let tp = apply_unitary(&t, &omega)?;
    let xs: Vec<CMat> = (0..20)
        .map(|_| {
            let g = sample::random_contraction(t.dim(), t.dim(), 1.0, &mut rng);
            &g + g.adjoint()
        })
        .collect();
    Ok(Some(rho_invariance_residual(&t, &tp, &xs)))
}

fn theorem_6_3(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = random_tuple(&mut rng, cfg);
    let alpha = sample::random_automorphism(t.n(), 0.7, &mut rng);
    let zs = samples(t.n(), &mut rng);
    Ok(Some(automorphism_theta_check(&t, &alpha, &zs, &tol())?.max_residual))
}

/// One tuple from the family `k mod 5`: strict contraction, jointly
/// nilpotent, spherical, pure ⊕ spherical, truncated multishift.
pub fn class_family(k: usize, rng: &mut Rng, cfg: &SuiteConfig) -> OperatorTuple {
    let n = rng.random_range(1..=cfg.max_n);
    let dim = rng.random_range(1..=cfg.max_dim);
    match k % 5 {
        0 => random_commuting_tuple(dim, n, rng.random(), rng.random_range(0.02..0.4)),
        1 => random_nilpotent_tuple(dim, n, rng.random(), rng.random_range(0.0..0.4)),
        2 => sample::random_spherical_diagonal(dim, n, rng),
        3 => {
            let pure = rng.random_range(1..=cfg.max_dim.div_ceil(2));
            let sph = rng.random_range(1..=cfg.max_dim.div_ceil(2));
            sample::random_mixed_tuple(pure, sph, n, rng)
        }
        _ => truncated_multishift(n, rng.random_range(1..=3), 1),
    }
}

fn classes(seed: u64, k: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = class_family(k, &mut rng, cfg);
    let alpha = sample::random_automorphism(t.n(), 0.7, &mut rng);
    match class_preservation_suite(&t, &alpha, &ClassifyConfig::default(), &tol()) {
        Ok(r) => Ok(Some(if r.agree { 0.0 } else { 1.0 })),
        Err(Error::Indeterminate(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn prop_5_2(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let n = rng.random_range(1..=cfg.max_n);
    let pure = rng.random_range(1..=cfg.max_dim.div_ceil(2));
    let sph = rng.random_range(1..=cfg.max_dim.div_ceil(2));
    let t = sample::random_mixed_tuple(pure, sph, n, &mut rng);
    let lambda = sample::random_ball_point(n, 0.7, &mut rng);
    match kernel_invariance_checks(&t, &lambda, &ClassifyConfig::default(), &tol()) {
        Ok(r) => Ok(Some(r.max_residual())),
        Err(Error::Indeterminate(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn far_point(n: usize, radius: f64, avoid: &[BallPoint], rng: &mut Rng) -> BallPoint {
    loop {
        let p = sample::random_ball_point(n, radius, rng);
        if avoid.iter().all(|q| q.distance(&p) >= SPECTRAL_GAP) {
            return p;
        }
    }
}

/// Diagonal tuple with a planted joint eigenvalue (even `k`) or a point
/// kept away from all joint eigenvalues (odd `k`).
fn spectrum(seed: u64, k: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let n = rng.random_range(1..=cfg.max_n);
    let dim = rng.random_range(1..=cfg.max_dim);
    let planted = k.is_multiple_of(2);
    let mut points: Vec<BallPoint> = Vec::with_capacity(dim);
    let lambda = if planted {
        let l = sample::random_ball_point(n, 0.8, &mut rng);
        points.push(l.clone());
        l
    } else {
        BallPoint::zero(n)
    };
    while points.len() < dim {
        let p = far_point(n, 0.95, &points[..usize::from(planted)], &mut rng);
        points.push(p);
    }
    let lambda = if planted {
        let at = rng.random_range(0..dim);
        points.swap(0, at);
        lambda
    } else {
        far_point(n, 0.8, &points, &mut rng)
    };
    let t = sample::diagonal_tuple(&points);
    match spectrum_charfn_consistency(&t, &lambda, SPECTRUM_TOL, &tol()) {
        Ok(r) => Ok(Some(if r.agree && r.in_sigma_r == planted { 0.0 } else { 1.0 })),
        Err(Error::ToleranceAmbiguous(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn lemma_5_7(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let n = rng.random_range(1..=cfg.max_n);
    let dim = rng.random_range(1..=cfg.max_dim);
    let z = sample::random_spherical_diagonal(dim, n, &mut rng);
    let u = random_unitary(dim, &mut rng);
    let z = z.conjugate(&u);
    let lambda = sample::random_ball_point(n, 0.8, &mut rng);
    Ok(Some(spherical_preservation(&z, &lambda, 1e-9, &tol())?.max_residual()))
}

fn theorem_a_partial(seed: u64, k: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = random_tuple(&mut rng, cfg);
    Ok(Some(identity_la_partial(&t, k % (cfg.degree + 2), &tol())?))
}

fn theorem_a_multiplier(seed: u64, k: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let small = SuiteConfig {
        max_dim: cfg.max_dim.min(5),
        ..*cfg
    };
    let t = random_tuple(&mut rng, &small);
    Ok(Some(identity_lth_truncated(&t, k % (cfg.degree + 1), &tol())?))
}

fn nilpotent_model_tuple(rng: &mut Rng, cfg: &SuiteConfig) -> OperatorTuple {
    let dim = rng.random_range(1..=cfg.max_dim.min(5));
    let n = rng.random_range(1..=cfg.max_n);
    random_nilpotent_tuple(dim, n, rng.random(), rng.random_range(0.0..0.4))
}

fn model(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = nilpotent_model_tuple(&mut rng, cfg);
    let m = model_space(&t, t.dim(), &tol(), &ClassifyConfig::default())?;
    Ok(Some(
        m.phi_unitarity
            .max(m.intertwining_residual)
            .max(m.adjoint_residual),
    ))
}

/// Longest word used for trace invariants of a `dim`-dimensional tuple.
pub fn word_length(dim: usize) -> usize {
    (2 * dim).clamp(1, 6)
}

fn model_words(seed: u64, _: usize, cfg: &SuiteConfig) -> TrialResult {
    let mut rng = seeded_rng(seed);
    let t = nilpotent_model_tuple(&mut rng, cfg);
    let m = model_space(&t, t.dim(), &tol(), &ClassifyConfig::default())?;
    let len = word_length(t.dim());
    let a = word_trace_invariants(&t, len);
    let b = word_trace_invariants(&m.model_tuple, len);
    Ok(Some(a.max_distance(&b).unwrap_or(f64::INFINITY)))
}

/// `‖I − Σ S_i S_i* − P_0‖_F`, plus one for each structural failure
/// (not pure, or `A_∞` not reached in exactly `N + 1` steps).
fn multishift(_: u64, k: usize, cfg: &SuiteConfig) -> TrialResult {
    let n = 1 + k % cfg.max_n.max(1);
    let big_n = 1 + (k / cfg.max_n.max(1)) % cfg.degree.max(1);
    let s = truncated_multishift(n, big_n, 1);
    let mut p0 = CMat::zeros(s.dim(), s.dim());
    p0[(0, 0)] = crate::opcore::c(1.0, 0.0);
    let mut residual = frob(&(identity(s.dim()) - s.row_gram() - p0));
    let a = a_infinity(&s, 1e-13, 10 * (big_n + 1));
    if !(a.converged && frob(&a.a_inf) == 0.0) {
        residual += 1.0;
    }
    if a.iterations != big_n + 1 {
        residual += 1.0;
    }
    Ok(Some(residual))
}

pub fn registry() -> Vec<Suite> {
    vec![
        Suite {
            name: "classes",
            anchor: "class preservation under ball automorphisms",
            default_trials: 100,
            tolerance: 0.0,
            trial: classes,
        },
        Suite {
            name: "cor6.2",
            anchor: "invariance of rho under unitary mixing",
            default_trials: 100,
            tolerance: 1e-10,
            trial: cor_6_2,
        },
        Suite {
            name: "eq4.5",
            anchor: "sign symmetry of the fractional transform",
            default_trials: 100,
            tolerance: 1e-10,
            trial: eq_4_5,
        },
        Suite {
            name: "lemma4.1",
            anchor: "defect identities of the fractional transform",
            default_trials: 200,
            tolerance: 1e-9,
            trial: lemma_4_1,
        },
        Suite {
            name: "lemma5.7",
            anchor: "involutions preserve spherical tuples",
            default_trials: 50,
            tolerance: 1e-9,
            trial: lemma_5_7,
        },
        Suite {
            name: "lemma6.1",
            anchor: "characteristic function under unitary mixing",
            default_trials: 100,
            tolerance: 1e-9,
            trial: lemma_6_1,
        },
        Suite {
            name: "model",
            anchor: "functional model of pure tuples",
            default_trials: 50,
            tolerance: 1e-9,
            trial: model,
        },
        Suite {
            name: "model.words",
            anchor: "word-trace invariants of the functional model",
            default_trials: 50,
            tolerance: 1e-8,
            trial: model_words,
        },
        Suite {
            name: "multishift",
            anchor: "truncated multishift defect and purity",
            default_trials: 15,
            tolerance: 1e-14,
            trial: multishift,
        },
        Suite {
            name: "prop4.3",
            anchor: "intertwining of composed fractional transforms",
            default_trials: 200,
            tolerance: 1e-9,
            trial: prop_4_3,
        },
        Suite {
            name: "prop5.1",
            anchor: "ball involution as a fractional transform",
            default_trials: 500,
            tolerance: 1e-10,
            trial: prop_5_1,
        },
        Suite {
            name: "prop5.2",
            anchor: "fixed space of the asymptotic limit under involutions",
            default_trials: 50,
            tolerance: 1e-8,
            trial: prop_5_2,
        },
        Suite {
            name: "spectrum",
            anchor: "right spectrum and surjectivity of the characteristic function",
            default_trials: 100,
            tolerance: 0.0,
            trial: spectrum,
        },
        Suite {
            name: "theorem5.3",
            anchor: "characteristic function under involutions",
            default_trials: 100,
            tolerance: 1e-8,
            trial: theorem_5_3,
        },
        Suite {
            name: "theorem5.3.unitary",
            anchor: "unitarity of the involution intertwiners",
            default_trials: 100,
            tolerance: 1e-9,
            trial: theorem_5_3_unitary,
        },
        Suite {
            name: "theorem6.3",
            anchor: "characteristic function under general automorphisms",
            default_trials: 100,
            tolerance: 1e-8,
            trial: theorem_6_3,
        },
        Suite {
            name: "theoremA.multiplier",
            anchor: "truncated identity L*L + M M* = I",
            default_trials: 100,
            tolerance: 1e-9,
            trial: theorem_a_multiplier,
        },
        Suite {
            name: "theoremA.partial",
            anchor: "partial-sum identity L L* + rho^(N+1)(I) = I",
            default_trials: 100,
            tolerance: 1e-11,
            trial: theorem_a_partial,
        },
    ]
}
