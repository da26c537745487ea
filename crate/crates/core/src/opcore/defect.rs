use super::linalg::{identity, psd_sqrt_eigen, CMat};
use super::tuple::OperatorTuple;
use super::Tolerances;
use crate::Result;

/// Defect operator `D_C = (I − C*C)^{1/2}` of a contraction together with an
/// orthonormal basis of its (numerical) range.
#[derive(Clone, Debug)]
pub struct Defect {
    /// `D_C`, square on the domain of `C`.
    pub op: CMat,
    /// Orthonormal columns spanning `𝒟_C`.
    pub basis: CMat,
    /// Eigenvalues of `D_C²` in ascending order.
    pub squared_spectrum: Vec<f64>,
}

impl Defect {
    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthogonal projection onto `𝒟_C`.
    pub fn projection(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }
}

/// Defect of an arbitrary contraction `c` (acting on its column space).
pub fn defect_of(c: &CMat, rank_tol: f64, clamp_tol: f64) -> Result<Defect> {
    let sq = identity(c.ncols()) - c.adjoint() * c;
    let eig = psd_sqrt_eigen(&sq, clamp_tol)?;
    Ok(Defect {
        op: eig.map(|v| v.max(0.0).sqrt()),
        basis: eig.select(|v| v > rank_tol),
        squared_spectrum: eig.values,
    })
}

/// `D_T`, `D_{T*}` and orthonormal bases of `𝒟_T ⊂ Hⁿ`, `𝒟_{T*} ⊂ H`.
#[derive(Clone, Debug)]
pub struct DefectPair {
    pub d: Defect,
    pub dstar: Defect,
    pub rank_tolerance: f64,
}

impl DefectPair {
    /// Defects of a contraction `c` and of its adjoint.
    pub fn of_contraction(c: &CMat, tol: &Tolerances) -> Result<Self> {
        Ok(Self {
            d: defect_of(c, tol.rank, tol.clamp)?,
            dstar: defect_of(&c.adjoint(), tol.rank, tol.clamp)?,
            rank_tolerance: tol.rank,
        })
    }

    pub fn big_d(&self) -> &CMat {
        &self.d.op
    }

    pub fn big_dstar(&self) -> &CMat {
        &self.dstar.op
    }

    pub fn basis_d(&self) -> &CMat {
        &self.d.basis
    }

    pub fn basis_dstar(&self) -> &CMat {
        &self.dstar.basis
    }
}

/// Defect pair of the row operator of `t`.
pub fn defects(t: &OperatorTuple, rank_tol: f64) -> Result<DefectPair> {
    let tol = Tolerances {
        rank: rank_tol,
        ..Tolerances::default()
    };
    DefectPair::of_contraction(&t.row(), &tol)
}
