use super::space::TruncatedSpace;
use crate::opcore::{c, CMat, OperatorTuple};

/// `S_i ⊗ I_m` compressed to `𝐇_N ⊗ ℂ^m`:
/// `e_α ↦ (w_{α+e_i}/w_α) e_{α+e_i}`, with images of degree `N + 1` dropped.
pub fn multishift_on(space: &TruncatedSpace, m: usize) -> OperatorTuple {
    let dim = space.dim() * m;
    let ops = (0..space.n())
        .map(|i| {
            let mut s = CMat::zeros(dim, dim);
            for (k, alpha) in space.indices().iter().enumerate() {
                let up = alpha.plus_unit(i);
                if let Some(target) = space.position(&up) {
                    let ratio = space.weights()[target] / space.weights()[k];
                    for j in 0..m {
                        s[(target * m + j, k * m + j)] = c(ratio, 0.0);
                    }
                }
            }
            s
        })
        .collect();
    OperatorTuple::new(ops).expect("square blocks")
}

/// Multishift of multiplicity `m` on polynomials of degree `≤ max_degree`.
pub fn truncated_multishift(n: usize, max_degree: usize, m: usize) -> OperatorTuple {
    multishift_on(&TruncatedSpace::new(n, max_degree), m)
}
