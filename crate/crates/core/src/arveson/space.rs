use std::collections::HashMap;

use crate::ball::{BallPoint, POLE_TOL};
use crate::multiindex::{graded_indices, MultiIndex};
use crate::opcore::C64;
use crate::{Error, Result};

/// Polynomials of degree `≤ N` in `n` variables with the Drury–Arveson norm.
#[derive(Clone, Debug)]
pub struct TruncatedSpace {
    n: usize,
    max_degree: usize,
    indices: Vec<MultiIndex>,
    weights: Vec<f64>,
    position: HashMap<MultiIndex, usize>,
}

impl TruncatedSpace {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let indices = graded_indices(n, max_degree);
        let weights = indices.iter().map(|a| 1.0 / a.multinomial().sqrt()).collect();
        let position = indices.iter().cloned().zip(0..).collect();
        Self {
            n,
            max_degree,
            indices,
            weights,
            position,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// `w_α = ‖z^α‖`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, alpha: &MultiIndex) -> Option<f64> {
        self.position(alpha).map(|k| self.weights[k])
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.position.get(alpha).copied()
    }
}

/// `k(z, w) = 1/(1 − ⟨z, w⟩)`.
pub fn kernel(z: &BallPoint, w: &BallPoint) -> Result<C64> {
    if z.n() != w.n() {
        return Err(Error::ShapeMismatch(format!("points in ℂ^{} and ℂ^{}", z.n(), w.n())));
    }
    let ip = z.inner(w);
    if ip.norm() >= 1.0 - POLE_TOL {
        return Err(Error::PoleHit(format!("|⟨z, w⟩| = {} ≥ 1", ip.norm())));
    }
    Ok(1.0 / (1.0 - ip))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::{seeded_rng, CMat, HermitianEigen};
    use crate::sample;

    #[test]
    fn weights() {
        let s = TruncatedSpace::new(2, 2);
        assert_eq!(s.dim(), 6);
        let w11 = s.weight(&MultiIndex(vec![1, 1])).unwrap();
        assert!((w11 - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.weight(&MultiIndex(vec![2, 0])), Some(1.0));
    }

    #[test]
    fn kernel_values() {
        let w = BallPoint::from_real(&[0.2, 0.7]);
        assert_eq!(kernel(&BallPoint::zero(2), &w).unwrap(), C64::new(1.0, 0.0));
        let h = BallPoint::from_real(&[0.5]);
        assert!((kernel(&h, &h).unwrap().re - 4.0 / 3.0).abs() < 1e-15);
        let one = BallPoint::from_real(&[1.0]);
        assert!(matches!(kernel(&one, &one), Err(Error::PoleHit(_))));
    }

    #[test]
    fn kernel_gram_is_psd() {
        let mut rng = seeded_rng(3);
        let pts: Vec<BallPoint> = (0..5).map(|_| sample::random_ball_point(3, 0.95, &mut rng)).collect();
        let g = CMat::from_fn(5, 5, |i, j| kernel(&pts[i], &pts[j]).unwrap());
        assert!(HermitianEigen::new(&g).min() >= -1e-12);
    }
}
