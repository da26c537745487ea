//! The operator `L(f ⊗ ξ) = f(T) D_{T*} ξ` on polynomials of bounded
//! degree, its adjoint series and the two identities
//!
//! ```text
//! L L* + A_∞ = I,        L* L + M_θ M_θ* = I
//! ```
//!
//! in the forms that hold exactly after truncation:
//! `L_N L_N* + ρ_T^{N+1}(I) = I` (telescoping `ρ^k(I) − ρ^{k+1}(I)`), and
//! `L_N* L_N + M_N M_N* = I` (`M_θ*` does not raise degree, so the
//! compression of `M_θ M_θ*` to degree `≤ N` only involves `M_N`).

use std::collections::HashMap;

use super::space::TruncatedSpace;
use crate::ball::rho;
use crate::charfn::{taylor_from, CharacteristicFunction, TaylorTable};
use crate::multiindex::MultiIndex;
use crate::opcore::{c, frob, CMat, CVec, DefectPair, OperatorTuple, Tolerances};
use crate::{Error, Result};

/// `L_N : 𝐇_N(𝒟_{T*}) → H` as a `d × (dim 𝐇_N · r*)` matrix.
#[derive(Clone, Debug)]
pub struct LMatrix {
    pub mat: CMat,
    /// `r* = dim 𝒟_{T*}`.
    pub r_star: usize,
}

/// `T^α` for every `α` in the space.
fn powers(t: &OperatorTuple, space: &TruncatedSpace) -> HashMap<MultiIndex, CMat> {
    let mut out: HashMap<MultiIndex, CMat> = HashMap::new();
    for alpha in space.indices() {
        let value = match alpha.first_nonzero() {
            None => CMat::identity(t.dim(), t.dim()),
            Some(i) => t.op(i) * &out[&alpha.minus_unit(i).expect("α_i ≥ 1")],
        };
        out.insert(alpha.clone(), value);
    }
    out
}

fn l_from(t: &OperatorTuple, defects: &DefectPair, space: &TruncatedSpace) -> LMatrix {
    let d = t.dim();
    let range = defects.big_dstar() * defects.basis_dstar();
    let r_star = range.ncols();
    let pw = powers(t, space);
    let mut mat = CMat::zeros(d, space.dim() * r_star);
    for (k, (alpha, &w)) in space.indices().iter().zip(space.weights()).enumerate() {
        let block = &pw[alpha] * &range * c(1.0 / w, 0.0);
        mat.view_mut((0, k * r_star), (d, r_star)).copy_from(&block);
    }
    LMatrix { mat, r_star }
}

fn check_arity(t: &OperatorTuple, space: &TruncatedSpace) -> Result<()> {
    if t.n() != space.n() {
        return Err(Error::ShapeMismatch(format!(
            "{}-tuple on a space in {} variables",
            t.n(),
            space.n()
        )));
    }
    Ok(())
}

/// Column `(α, j)` is `w_α^{-1} T^α D_{T*} ξ_j`.
pub fn l_matrix(t: &OperatorTuple, space: &TruncatedSpace, tol: &Tolerances) -> Result<LMatrix> {
    check_arity(t, space)?;
    let defects = DefectPair::of_contraction(&t.row(), tol)?;
    Ok(l_from(t, &defects, space))
}

/// Coordinates of the degree-`≤ N` part of `D_{T*}(I − zT*)^{-1} h`.
///
/// The coefficient of `z^β` is `D_{T*} c_β` with `c_0 = h` and
/// `c_β = Σ_{i : β_i ≥ 1} T_i* c_{β−e_i}`; its coordinate on `e_β ⊗ ξ_j` is
/// `w_β ξ_j* D_{T*} c_β`.
pub fn lstar_series(
    t: &OperatorTuple,
    h: &CVec,
    space: &TruncatedSpace,
    tol: &Tolerances,
) -> Result<CVec> {
    check_arity(t, space)?;
    if h.len() != t.dim() {
        return Err(Error::ShapeMismatch(format!(
            "h has length {} but dim H = {}",
            h.len(),
            t.dim()
        )));
    }
    let defects = DefectPair::of_contraction(&t.row(), tol)?;
    let proj = defects.basis_dstar().adjoint() * defects.big_dstar();
    let r_star = proj.nrows();
    let adj: Vec<CMat> = t.ops().iter().map(|m| m.adjoint()).collect();
    let mut coeffs: HashMap<MultiIndex, CVec> = HashMap::new();
    let mut out = CVec::zeros(space.dim() * r_star);
    for (k, (beta, &w)) in space.indices().iter().zip(space.weights()).enumerate() {
        let cb = if beta.degree() == 0 {
            h.clone()
        } else {
            (0..t.n())
                .filter_map(|i| beta.minus_unit(i).map(|b| &adj[i] * &coeffs[&b]))
                .fold(CVec::zeros(t.dim()), |acc, v| acc + v)
        };
        let block = &proj * &cb * c(w, 0.0);
        out.rows_mut(k * r_star, r_star).copy_from(&block);
        coeffs.insert(beta.clone(), cb);
    }
    Ok(out)
}

/// `‖L_N L_N* + ρ_T^{N+1}(I) − I‖_F`.
pub fn identity_la_partial(t: &OperatorTuple, max_degree: usize, tol: &Tolerances) -> Result<f64> {
    let space = TruncatedSpace::new(t.n(), max_degree);
    let l = l_matrix(t, &space, tol)?;
    let d = t.dim();
    let mut x = CMat::identity(d, d);
    for _ in 0..=max_degree {
        x = rho(t, &x);
    }
    Ok(frob(&(&l.mat * l.mat.adjoint() + x - CMat::identity(d, d))))
}

/// Matrix of `M_θ` from `𝐇_N(𝒟_T)` to `𝐇_N(𝒟_{T*})`: block `(β′, β)` is
/// `(w_{β′}/w_β) Θ_{β′−β}` for `β ≤ β′`, else zero.
pub fn multiplier_matrix(table: &TaylorTable, space: &TruncatedSpace) -> Result<CMat> {
    if table.n() != space.n() || table.max_degree() < space.max_degree() {
        return Err(Error::ShapeMismatch(format!(
            "Taylor table (n = {}, degree {}) cannot fill a space (n = {}, degree {})",
            table.n(),
            table.max_degree(),
            space.n(),
            space.max_degree()
        )));
    }
    let (rs, r) = table.shape();
    let dim = space.dim();
    let mut m = CMat::zeros(dim * rs, dim * r);
    let w = space.weights();
    for (row, bp) in space.indices().iter().enumerate() {
        for (col, b) in space.indices().iter().enumerate() {
            if let Some(gamma) = bp.checked_sub(b) {
                let theta = table.get(&gamma).expect("degree within table");
                let block = theta * c(w[row] / w[col], 0.0);
                m.view_mut((row * rs, col * r), (rs, r)).copy_from(&block);
            }
        }
    }
    Ok(m)
}

/// `‖L_N* L_N + M_N M_N* − I‖_F`.
pub fn identity_lth_truncated(t: &OperatorTuple, max_degree: usize, tol: &Tolerances) -> Result<f64> {
    let cf = CharacteristicFunction::new(t, tol)?;
    let space = TruncatedSpace::new(t.n(), max_degree);
    let l = l_from(t, cf.defects(), &space);
    let m = multiplier_matrix(&taylor_from(&cf, max_degree), &space)?;
    let size = l.mat.ncols();
    Ok(frob(
        &(l.mat.adjoint() * &l.mat + &m * m.adjoint() - CMat::identity(size, size)),
    ))
}

/// `(L_N, M_N)` sharing one choice of defect bases.
pub(crate) fn l_and_m(
    t: &OperatorTuple,
    space: &TruncatedSpace,
    tol: &Tolerances,
) -> Result<(LMatrix, CMat)> {
    check_arity(t, space)?;
    let cf = CharacteristicFunction::new(t, tol)?;
    let l = l_from(t, cf.defects(), space);
    let m = multiplier_matrix(&taylor_from(&cf, space.max_degree()), space)?;
    Ok((l, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arveson::multishift_on;
    use crate::opcore::{random_commuting_tuple, random_nilpotent_tuple, seeded_rng, C64};
    use crate::sample;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn degree_zero_is_dstar() {
        let t = random_commuting_tuple(3, 2, 1, 0.2);
        let space = TruncatedSpace::new(2, 0);
        let l = l_matrix(&t, &space, &tol()).unwrap();
        let dp = DefectPair::of_contraction(&t.row(), &tol()).unwrap();
        assert!(frob(&(l.mat - dp.big_dstar() * dp.basis_dstar())) < 1e-15);
    }

    #[test]
    fn zero_scalar_selects_constant() {
        let t = OperatorTuple::scalar(&[c(0.0, 0.0)]).unwrap();
        let l = l_matrix(&t, &TruncatedSpace::new(1, 3), &tol()).unwrap();
        let norms: Vec<f64> = l.mat.iter().map(|z| z.norm()).collect();
        assert_eq!(norms, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn intertwines_shift_below_top_degree() {
        let t = random_commuting_tuple(3, 2, 2, 0.1);
        let space = TruncatedSpace::new(2, 4);
        let l = l_matrix(&t, &space, &tol()).unwrap();
        let s = multishift_on(&space, l.r_star);
        let keep: usize = space.indices().iter().filter(|a| a.degree() < 4).count() * l.r_star;
        for i in 0..2 {
            let lhs = &l.mat * s.op(i);
            let rhs = t.op(i) * &l.mat;
            let diff = (lhs - rhs).columns(0, keep).into_owned();
            assert!(frob(&diff) < 1e-12);
        }
    }

    #[test]
    fn series_is_adjoint() {
        let mut rng = seeded_rng(8);
        let t = random_commuting_tuple(4, 3, 4, 0.1);
        let space = TruncatedSpace::new(3, 3);
        let l = l_matrix(&t, &space, &tol()).unwrap();
        for _ in 0..20 {
            let h = sample::random_contraction(4, 1, 1.0, &mut rng).column(0).into_owned();
            let f = sample::random_contraction(l.mat.ncols(), 1, 1.0, &mut rng).column(0).into_owned();
            let ls = lstar_series(&t, &h, &space, &tol()).unwrap();
            let a: C64 = ls.dotc(&f);
            let b: C64 = h.dotc(&(&l.mat * &f));
            assert!((a - b).norm() < 1e-12);
            assert!((ls.clone() - l.mat.adjoint() * &h).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_scalar_series() {
        let t = OperatorTuple::scalar(&[c(0.0, 0.0)]).unwrap();
        let h = CVec::from_element(1, c(0.7, 0.1));
        let ls = lstar_series(&t, &h, &TruncatedSpace::new(1, 3), &tol()).unwrap();
        assert_eq!(ls[0], c(0.7, 0.1));
        assert!(ls.rows(1, 3).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn nilpotent_series_terminates() {
        let t = random_nilpotent_tuple(3, 2, 6, 0.1);
        let h = CVec::from_element(3, c(1.0, 0.0));
        let ls = lstar_series(&t, &h, &TruncatedSpace::new(2, 5), &tol()).unwrap();
        let low = TruncatedSpace::new(2, 2).dim();
        let r_star = ls.len() / TruncatedSpace::new(2, 5).dim();
        assert!(ls.rows(low * r_star, ls.len() - low * r_star).norm() < 1e-15);
    }

    #[test]
    fn partial_identity() {
        let t = random_commuting_tuple(4, 2, 5, 0.05);
        for n in 0..=6 {
            assert!(identity_la_partial(&t, n, &tol()).unwrap() < 1e-11);
        }
        let u = OperatorTuple::scalar(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert!(identity_la_partial(&u, 3, &tol()).unwrap() < 1e-14);
    }

    #[test]
    fn truncated_identity() {
        let t = OperatorTuple::scalar(&[c(0.0, 0.0)]).unwrap();
        assert!(identity_lth_truncated(&t, 4, &tol()).unwrap() < 1e-15);
        let t = OperatorTuple::scalar(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(identity_lth_truncated(&t, 3, &tol()).unwrap() < 1e-12);
        let t = random_commuting_tuple(3, 3, 7, 0.1);
        for n in 0..=3 {
            assert!(identity_lth_truncated(&t, n, &tol()).unwrap() < 1e-9);
        }
    }
}
