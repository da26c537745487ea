//! Random instance generators for tests and verification suites.

use rand::Rng as _;

use crate::ball::{Automorphism, BallPoint};
use crate::opcore::random::{gaussian, gaussian_matrix};
use crate::opcore::{c, op_norm, random_commuting_tuple, random_unitary, CMat, OperatorTuple, Rng, C64};

/// Random `rows × cols` matrix with operator norm exactly `norm`.
pub fn random_contraction(rows: usize, cols: usize, norm: f64, rng: &mut Rng) -> CMat {
    let g = gaussian_matrix(rows, cols, rng);
    let s = op_norm(&g);
    if s > 0.0 {
        g * c(norm / s, 0.0)
    } else {
        g
    }
}

/// `rows × cols` matrix with orthonormal columns (`rows ≥ cols`).
pub fn random_isometry(rows: usize, cols: usize, rng: &mut Rng) -> CMat {
    assert!(rows >= cols, "an isometry needs rows ≥ cols");
    random_unitary(rows, rng).columns(0, cols).into_owned()
}

/// Uniform direction on the unit sphere of `ℂⁿ`.
pub fn random_sphere_point(n: usize, rng: &mut Rng) -> BallPoint {
    loop {
        let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return BallPoint::new(v.into_iter().map(|z| z / norm).collect());
        }
    }
}

/// Random point with `|z| = radius`.
pub fn random_point_with_radius(n: usize, radius: f64, rng: &mut Rng) -> BallPoint {
    let dir = random_sphere_point(n, rng);
    BallPoint::new(dir.coords().iter().map(|z| z * radius).collect())
}

/// Random point with `|z|` uniform in `[0, max_radius)`.
pub fn random_ball_point(n: usize, max_radius: f64, rng: &mut Rng) -> BallPoint {
    let r = rng.random::<f64>() * max_radius;
    random_point_with_radius(n, r, rng)
}

/// Random automorphism `ω ∘ φ_λ` with Haar `ω` and `|λ| < max_radius`.
pub fn random_automorphism(n: usize, max_radius: f64, rng: &mut Rng) -> Automorphism {
    let omega = random_unitary(n, rng);
    let lambda = random_ball_point(n, max_radius, rng);
    Automorphism::new(omega, lambda).expect("Haar unitary and interior point")
}

/// Diagonal tuple with joint eigenvalues `points[k]`.
pub fn diagonal_tuple(points: &[BallPoint]) -> OperatorTuple {
    let n = points[0].n();
    let dim = points.len();
    let ops = (0..n)
        .map(|i| {
            let mut m = CMat::zeros(dim, dim);
            for (k, p) in points.iter().enumerate() {
                m[(k, k)] = p.coords()[i];
            }
            m
        })
        .collect();
    OperatorTuple::new(ops).expect("diagonal blocks are square")
}

/// Spherical tuple: diagonal with every joint eigenvalue on the unit sphere.
pub fn random_spherical_diagonal(dim: usize, n: usize, rng: &mut Rng) -> OperatorTuple {
    let pts: Vec<BallPoint> = (0..dim).map(|_| random_sphere_point(n, rng)).collect();
    diagonal_tuple(&pts)
}

/// `U (P ⊕ Z) U*` with `P` a strict commuting contraction and `Z`
/// spherical: neither pure nor `C₁`.
pub fn random_mixed_tuple(pure_dim: usize, sph_dim: usize, n: usize, rng: &mut Rng) -> OperatorTuple {
    let p = random_commuting_tuple(pure_dim, n, rng.random(), 0.1 + 0.3 * rng.random::<f64>());
    let z = random_spherical_diagonal(sph_dim, n, rng);
    let u = random_unitary(pure_dim + sph_dim, rng);
    p.direct_sum(&z).expect("same arity").conjugate(&u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::{seeded_rng, validate_tuple};

    #[test]
    fn generators_respect_contracts() {
        let mut rng = seeded_rng(11);
        let a = random_contraction(3, 5, 0.7, &mut rng);
        assert!((op_norm(&a) - 0.7).abs() < 1e-12);
        let v = random_isometry(4, 2, &mut rng);
        assert!((v.adjoint() * &v - CMat::identity(2, 2)).norm() < 1e-13);
        let z = random_spherical_diagonal(3, 2, &mut rng);
        assert!((z.row_gram() - CMat::identity(3, 3)).norm() < 1e-13);
        let m = random_mixed_tuple(2, 2, 3, &mut rng);
        assert!(validate_tuple(&m, 1e-10, 1e-10).pass);
    }
}
