//! Truncated Drury–Arveson space `𝐇` and the objects built on it: the
//! multishift, `ρ_T` and `A_∞`, classification into pure / `C₁` / c.n.c.,
//! the operator `L` of the dilation theorem, multiplier matrices of `θ_T`,
//! the functional model of pure tuples and spherical tuples.
//!
//! The orthonormal basis of the truncation to degree `N` is
//! `e_α = z^α / w_α` with `w_α = (α!/|α|!)^{1/2}`. Vector-valued spaces
//! `𝐇(E)` are laid out with the multi-index outer and the `E`-coordinate
//! inner: `(α, j) ↦ pos(α)·dim E + j`.

mod classify;
mod model;
mod shift;
mod space;
mod spherical;
mod theorem_a;

pub use crate::ball::rho;
pub use classify::{a_infinity, classify, classify_with, AInfinity, ClassificationReport, ClassifyConfig};
pub use model::{model_space, theta_zero_multishift_check, ModelData, ThetaZeroReport};
pub use shift::{multishift_on, truncated_multishift};
pub use space::{kernel, TruncatedSpace};
pub use spherical::{
    class_preservation_suite, kernel_invariance_checks, spherical_check, spherical_preservation,
    ClassPreservation, KernelInvariance, SphericalReport,
};
pub use theorem_a::{
    identity_la_partial, identity_lth_truncated, l_matrix, lstar_series, multiplier_matrix,
    LMatrix,
};
