//! Error type shared by all solver and analysis entry points.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user input was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A time or index fell outside the grid.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A time stepper produced a non-finite state.
    #[error("solver diverged at step {step} (non-finite state)")]
    Divergence { step: usize },

    /// Newton iteration for an implicit step did not converge.
    #[error("Newton failed at step {step}: |residual| = {residual:.3e} after {iters} iterations")]
    NewtonFailure {
        step: usize,
        residual: f64,
        iters: usize,
    },

    /// The per-panel collocation system was singular.
    #[error("singular collocation system on panel {panel}")]
    SingularSystem { panel: usize },

    /// Bracket expansion never produced a sign change.
    #[error("no sign change while bracketing: residuals {lo_residual:.3e} and {hi_residual:.3e}")]
    BracketFailure { lo_residual: f64, hi_residual: f64 },

    /// Bisection hit its iteration cap before the interval shrank to tolerance.
    #[error("bisection exceeded {max} iterations (interval width {width:.3e})")]
    BisectionLimit { max: usize, width: f64 },

    /// A dependence bound was requested for a problem with beta <= 0.
    #[error("contraction constant beta = {beta:.6} is not positive; no dependence bound applies")]
    NoContraction { beta: f64 },

    /// The registry was asked for a problem it does not know.
    #[error("unknown registry example: {0}")]
    UnknownExample(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
