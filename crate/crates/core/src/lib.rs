//! Numerical toolkit for commuting row contractions on finite-dimensional
//! Hilbert spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`opcore`]: dense complex matrices, PSD square roots, defect operators,
//!   operator tuples, random commuting generators and word-trace fingerprints.
//! * [`fractional`]: the fractional transform `Ψ_A(W)`, its defect identities
//!   and the intertwining isometries `Ω`, `Ω_*`.
//! * [`ball`]: points and automorphisms of the unit ball and their action on
//!   operator tuples.
//! * [`charfn`]: the characteristic function `θ_T`, its Taylor table,
//!   coincidence certificates and the right-spectrum link.
//! * [`arveson`]: truncated Drury–Arveson space machinery, `A_∞`,
//!   classification, the operator `L`, multiplier matrices and model spaces.
//! * [`verify`]: randomized verification suites producing residual reports.

pub mod arveson;
pub mod ball;
pub mod charfn;
mod error;
pub mod fractional;
pub mod multiindex;
pub mod opcore;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
pub use opcore::{CMat, CVec, OperatorTuple, Tolerances, C64};
