use thiserror::Error;

/// Library-wide result type.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong constructing or evaluating the model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameter domain violated (requires omega1 >= omega2 > 0, omega >= 0,
    /// all finite).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Delta = 0, which happens only for omega = 0 with omega1 = omega2;
    /// the mode shape factors are undefined there.
    #[error("degenerate spectrum: shape factors undefined at delta = 0")]
    DegenerateSpectrum,

    /// The normal-mode transformation divides by omega and is singular at
    /// omega = 0 (the modes are already decoupled there).
    #[error("normal-mode transformation is singular at omega = 0")]
    DegenerateTransformation,

    /// Integrator step size out of range: requires dt > 0 and
    /// dt * omega_plus <= 0.1.
    #[error("integrator step size out of range: {0}")]
    StepSize(String),

    /// Mode index out of range; modes are numbered 1 and 2.
    #[error("mode index must be 1 or 2, got {0}")]
    InvalidMode(usize),

    /// An internal identity that holds analytically was violated beyond
    /// floating-point tolerance; indicates a bug upstream of the caller.
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation has no defined answer in this regime.
    #[error("not applicable: {0}")]
    NotApplicable(String),
}
