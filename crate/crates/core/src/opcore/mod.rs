//! Dense complex matrix substrate: adjoints, PSD square roots, defect
//! operators, operator-tuple validation, random commuting tuples and
//! unitary-invariant fingerprints.

mod defect;
pub mod linalg;
pub(crate) mod random;
mod tuple;
mod words;

pub use defect::{defect_of, defects, Defect, DefectPair};
pub use linalg::{
    c, frob, identity, op_norm, psd_sqrt, sigma_min, unitarity_residual, CMat, CVec,
    HermitianEigen, C64,
};
pub use random::{
    random_commuting_tuple, random_nilpotent_tuple, random_unitary, seeded_rng, trial_seed,
    Rng,
};
pub use tuple::{validate_tuple, OperatorTuple, TupleDiagnostics};
pub use words::{word_trace_invariants, Letter, Word, WordInvariantVector};

/// Numerical thresholds shared by the tuple-level operations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Negative eigenvalues above `−clamp` are treated as zero in PSD roots.
    pub clamp: f64,
    /// Defect-space rank cut, applied to eigenvalues of `D²`.
    pub rank: f64,
    /// Smallest admissible singular value of a resolvent.
    pub inv: f64,
    pub commute: f64,
    pub contract: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            clamp: 1e-10,
            rank: 1e-8,
            inv: 1e-8,
            commute: 1e-8,
            contract: 1e-8,
        }
    }
}
