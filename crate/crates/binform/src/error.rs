//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Root iteration exhausted its budget without meeting the residual
    /// tolerance.
    #[error("root finder did not converge within the iteration budget")]
    NonConvergence,

    /// Leading coefficient vanishes (relative to the coefficient scale).
    #[error("degenerate input: leading coefficient vanishes")]
    DegenerateInput,

    /// A form-level operation requires a positive definite form.
    #[error("form is not positive definite")]
    NotPositiveDefinite,

    /// Enumeration asked for a discriminant outside the definite range.
    #[error("invalid discriminant: {0}")]
    InvalidDiscriminant(String),

    /// A reduction loop exceeded its iteration guard. Only reachable on
    /// pathological floating input (NaN, denormal heights).
    #[error("reduction loop exceeded its iteration guard")]
    NonTermination,

    /// Stability is only defined for degree >= 3.
    #[error("degree too small: {0} < 3")]
    DegreeTooSmall(usize),

    /// A root of multiplicity >= n/2 blocks the Julia construction.
    #[error("form is not stable: root of multiplicity {multiplicity} with degree {degree}")]
    NotStable { degree: usize, multiplicity: usize },

    /// The Q0 covariant needs simple roots.
    #[error("repeated root: |f'(alpha)| below tolerance")]
    RepeatedRoot,

    /// Newton and every fallback failed to reach the residual tolerance.
    #[error("critical-point solver diverged (residual {residual:e})")]
    SolverDiverged { residual: f64 },

    /// Degree-2 forms are their own Julia quadratic only when positive
    /// definite.
    #[error("policy not applicable: degree-2 form is not positive definite")]
    PolicyNotApplicable,
}
