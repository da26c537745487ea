use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (‖M − M*‖ = {residual:e})")]
    NonHermitian { residual: f64 },

    #[error("matrix is indefinite (smallest eigenvalue {min_eigenvalue:e})")]
    IndefiniteMatrix { min_eigenvalue: f64 },

    #[error("resolvent is singular or ill-conditioned (σ_min = {sigma_min:e}, cond = {condition:e})")]
    SingularResolvent { sigma_min: f64, condition: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("defining relation of Ω is inconsistent (least-squares residual {residual:e})")]
    InconsistentDefinition { residual: f64 },

    #[error("hypothesis violated: {which} is not invertible (σ_min = {sigma_min:e})")]
    HypothesisViolated { which: &'static str, sigma_min: f64 },

    #[error("pole hit: {0}")]
    PoleHit(String),

    #[error("transformed tuple is no longer a commuting multicontraction (commutator {commutator:e}, row norm {row_norm})")]
    CommutativityLost { commutator: f64, row_norm: f64 },

    #[error("matrix is not unitary (‖U*U − I‖ = {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("expected unitary intertwiners, got residuals Ω: {omega:e}, Ω_*: {omega_star:e}")]
    UnitarityFailure { omega: f64, omega_star: f64 },

    #[error("decision too close to tolerance: {0}")]
    ToleranceAmbiguous(String),

    #[error("tuple is not pure")]
    NotPure,

    #[error("truncation unsound: model space has dimension {got}, expected {expected}")]
    TruncationUnsound { got: usize, expected: usize },

    #[error("classification precondition not met: {0}")]
    PreconditionUnclassified(String),

    #[error("indeterminate classification: {0}")]
    Indeterminate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors that signal a violated mathematical precondition
    /// (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::ShapeMismatch(_) | Error::InvalidArgument(_))
    }
}
