//! Dense complex helpers shared by every module.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Frobenius norm; the default residual norm throughout the crate.
pub fn frob(m: &CMat) -> f64 {
    if m.is_empty() {
        0.0
    } else {
        m.norm()
    }
}

// Singular values go through the Hermitian eigensolver: nalgebra's complex
// SVD occasionally returns a factorization that is off by ~1e-3.

/// Largest eigenvalue of the smaller Gram matrix of `m`.
fn gram_max_eigenvalue(m: &CMat) -> f64 {
    let gram = if m.nrows() <= m.ncols() {
        m * m.adjoint()
    } else {
        m.adjoint() * m
    };
    gram.symmetric_eigenvalues().max().max(0.0)
}

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    gram_max_eigenvalue(m).sqrt()
}

/// Smallest singular value of a square matrix, computed as `1/‖M⁻¹‖` (0 when
/// `M` is singular, +inf for the empty matrix).
pub fn sigma_min(m: &CMat) -> f64 {
    if m.is_empty() {
        return f64::INFINITY;
    }
    match m.clone().try_inverse() {
        Some(inv) if is_finite(&inv) => 1.0 / op_norm(&inv),
        _ => 0.0,
    }
}

/// `‖M − M*‖_F`.
pub fn hermitian_residual(m: &CMat) -> f64 {
    frob(&(m - m.adjoint()))
}

/// `‖U*U − I‖_F`.
pub fn isometry_residual(u: &CMat) -> f64 {
    frob(&(u.adjoint() * u - identity(u.ncols())))
}

/// `‖U*U − I‖_F` and `‖UU* − I‖_F`, the larger of the two; infinite for
/// non-square input.
pub fn unitarity_residual(u: &CMat) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    isometry_residual(u).max(frob(&(u * u.adjoint() - identity(u.nrows()))))
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues in ascending
/// order and each eigenvector's largest entry made real positive.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    pub fn new(m: &CMat) -> Self {
        let n = m.nrows();
        if n == 0 {
            return Self {
                values: Vec::new(),
                vectors: CMat::zeros(0, 0),
            };
        }
        let sym = (m + m.adjoint()).scale(0.5);
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vectors = CMat::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let mut col = eig.eigenvectors.column(src).into_owned();
            fix_phase(&mut col);
            vectors.set_column(dst, &col);
        }
        Self { values, vectors }
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::INFINITY)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NEG_INFINITY)
    }

    /// Columns whose eigenvalue satisfies `keep`, in ascending eigenvalue order.
    pub fn select(&self, keep: impl Fn(f64) -> bool) -> CMat {
        let cols: Vec<usize> = (0..self.values.len())
            .filter(|&k| keep(self.values[k]))
            .collect();
        self.vectors.select_columns(cols.iter())
    }

    /// Rebuild `Q f(Λ) Q*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for k in 0..n {
            let s = f(self.values[k]);
            scaled.column_mut(k).scale_mut(s);
        }
        scaled * self.vectors.adjoint()
    }
}

fn fix_phase(col: &mut CVec) {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (k, z) in col.iter().enumerate() {
        // Ties resolved toward the first index, with a small slack so that
        // rounding noise does not flip the choice.
        if z.norm() > best_abs * (1.0 + 1e-9) {
            best = k;
            best_abs = z.norm();
        }
    }
    if best_abs > 0.0 {
        let phase = col[best].conj() / best_abs;
        for z in col.iter_mut() {
            *z *= phase;
        }
    }
}

/// Hermitian PSD square root; eigenvalues in `[−clamp_tol, 0)` are clamped
/// to zero before rooting.
pub fn psd_sqrt(m: &CMat, clamp_tol: f64) -> Result<CMat> {
    Ok(psd_sqrt_eigen(m, clamp_tol)?.map(|v| v.max(0.0).sqrt()))
}

/// Validates `m` as Hermitian PSD within `clamp_tol` and returns its
/// eigendecomposition.
pub(crate) fn psd_sqrt_eigen(m: &CMat, clamp_tol: f64) -> Result<HermitianEigen> {
    if m.nrows() != m.ncols() {
        return Err(Error::ShapeMismatch(format!(
            "square matrix expected, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let residual = hermitian_residual(m);
    if residual > clamp_tol {
        return Err(Error::NonHermitian { residual });
    }
    let eig = HermitianEigen::new(m);
    let min = eig.min();
    if min < -clamp_tol {
        return Err(Error::IndefiniteMatrix { min_eigenvalue: min });
    }
    Ok(eig)
}

/// Solves `A X = B` by LU; `None` when `A` is singular.
pub fn solve(a: &CMat, b: &CMat) -> Option<CMat> {
    if a.is_empty() {
        return Some(CMat::zeros(0, b.ncols()));
    }
    a.clone().lu().solve(b)
}

/// Least-squares solution of `X G = R` (G of full row rank), returned with
/// the residual `‖X G − R‖_F`. An infinite residual means `G` is rank
/// deficient.
pub fn solve_right_lstsq(g: &CMat, r: &CMat) -> (CMat, f64) {
    if g.nrows() == 0 || g.ncols() == 0 {
        let x = CMat::zeros(r.nrows(), g.nrows());
        let res = frob(&(&x * g - r));
        return (x, res);
    }
    if g.nrows() > g.ncols() {
        return (CMat::zeros(r.nrows(), g.nrows()), f64::INFINITY);
    }
    // X G = R  <=>  G* X* = R*, solved through G* = QR
    let qr = g.adjoint().qr();
    let (q, tri) = qr.unpack();
    let Some(xt) = tri.solve_upper_triangular(&(q.adjoint() * r.adjoint())) else {
        return (CMat::zeros(r.nrows(), g.nrows()), f64::INFINITY);
    };
    let x = xt.adjoint();
    let res = frob(&(&x * g - r));
    (x, res)
}

/// Rows `j·d .. (j+1)·d` of `m`.
pub fn block_rows(m: &CMat, j: usize, d: usize) -> CMat {
    m.rows(j * d, d).into_owned()
}

/// Columns `j·d .. (j+1)·d` of `m`.
pub fn block_cols(m: &CMat, j: usize, d: usize) -> CMat {
    m.columns(j * d, d).into_owned()
}

pub fn is_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_identity_and_diagonal() {
        let i2 = identity(2);
        assert!(frob(&(psd_sqrt(&i2, 1e-10).unwrap() - &i2)) < 1e-15);

        let m = CMat::from_diagonal(&CVec::from_vec(vec![c(4.0, 0.0), c(0.0, 0.0)]));
        let s = psd_sqrt(&m, 1e-10).unwrap();
        let want = CMat::from_diagonal(&CVec::from_vec(vec![c(2.0, 0.0), c(0.0, 0.0)]));
        assert!(frob(&(s - want)) < 1e-14);
    }

    #[test]
    fn sqrt_rejects_bad_input() {
        let mut m = identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(psd_sqrt(&m, 1e-10), Err(Error::NonHermitian { .. })));

        let m = CMat::from_diagonal(&CVec::from_vec(vec![c(1.0, 0.0), c(-1e-3, 0.0)]));
        assert!(matches!(
            psd_sqrt(&m, 1e-10),
            Err(Error::IndefiniteMatrix { .. })
        ));
        // slightly negative is clamped
        let m = CMat::from_diagonal(&CVec::from_vec(vec![c(1.0, 0.0), c(-1e-12, 0.0)]));
        let s = psd_sqrt(&m, 1e-10).unwrap();
        assert_eq!(s[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn eigen_sorted_and_phase_fixed() {
        let m = CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let e = HermitianEigen::new(&m);
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] - 3.0).abs() < 1e-14);
        let back = e.map(|v| v);
        assert!(frob(&(back - m)) < 1e-14);
    }

    #[test]
    fn right_least_squares() {
        let g = CMat::from_row_slice(1, 2, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let r = CMat::from_row_slice(1, 2, &[c(3.0, 1.0), c(0.0, 0.0)]);
        let (x, res) = solve_right_lstsq(&g, &r);
        assert!((x[(0, 0)] - c(3.0, 1.0)).norm() < 1e-14);
        assert!(res < 1e-14);
    }
}
