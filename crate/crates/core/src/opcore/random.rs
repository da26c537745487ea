use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::linalg::{c, CMat, C64};
use super::tuple::OperatorTuple;

pub type Rng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent per-trial seed derived from a base seed (splitmix64 finaliser).
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    let mut z = base
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(trial.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn gaussian(rng: &mut Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub(crate) fn gaussian_matrix(rows: usize, cols: usize, rng: &mut Rng) -> CMat {
    // fill row-major so the draw order does not depend on storage layout
    let data: Vec<C64> = (0..rows * cols).map(|_| gaussian(rng)).collect();
    DMatrix::from_row_slice(rows, cols, &data)
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn random_unitary(n: usize, rng: &mut Rng) -> CMat {
    let g = gaussian_matrix(n, n, rng);
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

fn polynomial_tuple(x: &CMat, n: usize, constant_term: bool, rng: &mut Rng) -> Vec<CMat> {
    let dim = x.nrows();
    let mut powers = vec![CMat::identity(dim, dim)];
    for k in 1..dim.max(2) {
        powers.push(&powers[k - 1] * x);
    }
    (0..n)
        .map(|_| {
            let start = if constant_term { 0 } else { 1 };
            let mut t = CMat::zeros(dim, dim);
            for (k, p) in powers.iter().enumerate().skip(start) {
                t += p * (gaussian(rng) / (k as f64 + 1.0));
            }
            t
        })
        .collect()
}

fn upper_triangular(dim: usize, strict: bool, rng: &mut Rng) -> CMat {
    let g = gaussian_matrix(dim, dim, rng);
    let mut x = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            if !(strict && i == j) {
                x[(i, j)] = g[(i, j)];
            }
        }
    }
    let norm = super::linalg::op_norm(&x);
    if norm > 0.0 {
        x.unscale_mut(norm);
    }
    x
}

fn finish(ops: Vec<CMat>, dim: usize, margin: f64, rng: &mut Rng) -> OperatorTuple {
    let u = random_unitary(dim, rng);
    let t = OperatorTuple::new(ops)
        .expect("generator produces square blocks")
        .conjugate(&u);
    let norm = t.row_norm();
    if norm > 0.0 {
        t.scale((1.0 - margin) / norm)
    } else {
        t
    }
}

/// Commuting tuple `T_i = p_i(X)` for a random upper-triangular `X` and
/// random polynomials `p_i`, conjugated by a shared Haar unitary and scaled
/// to row norm `1 − margin`. Deterministic in `seed`.
pub fn random_commuting_tuple(dim: usize, n: usize, seed: u64, margin: f64) -> OperatorTuple {
    assert!(dim >= 1 && n >= 1, "dim and n must be positive");
    assert!((0.0..1.0).contains(&margin), "margin must lie in [0, 1)");
    let mut rng = seeded_rng(seed);
    let x = upper_triangular(dim, false, &mut rng);
    let ops = polynomial_tuple(&x, n, true, &mut rng);
    finish(ops, dim, margin, &mut rng)
}

/// Jointly nilpotent commuting tuple: `T_i = p_i(X)` with `X` strictly upper
/// triangular and `p_i(0) = 0`, so `T^α = 0` whenever `|α| ≥ dim`.
pub fn random_nilpotent_tuple(dim: usize, n: usize, seed: u64, margin: f64) -> OperatorTuple {
    assert!(dim >= 1 && n >= 1, "dim and n must be positive");
    assert!((0.0..1.0).contains(&margin), "margin must lie in [0, 1)");
    let mut rng = seeded_rng(seed);
    let x = upper_triangular(dim, true, &mut rng);
    let ops = polynomial_tuple(&x, n, false, &mut rng);
    finish(ops, dim, margin, &mut rng)
}
