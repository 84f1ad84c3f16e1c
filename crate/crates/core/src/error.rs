//! Error types shared across the crate.

use thiserror::Error;

/// Errors arising from invalid configuration or domain preconditions.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Grid sizes must be even powers of two, at least 4.
    #[error("invalid grid size {0}: must be a power of two >= 4")]
    GridSize(usize),

    /// Lebesgue exponents below 1 are rejected.
    #[error("invalid Lebesgue exponent p = {0}: must satisfy p >= 1")]
    LebesgueExponent(f64),

    /// Operation requires the trajectory window to contain a given time.
    #[error("trajectory window [{t_start}, {t_end}] does not contain t = {t}")]
    WindowMissing { t_start: f64, t_end: f64, t: f64 },

    /// Space-time transforms need the trajectory to cover the cutoff support.
    #[error("trajectory window [{t_start}, {t_end}] too small for cutoff support [-{need}, {need}]")]
    WindowTooSmall { t_start: f64, t_end: f64, need: f64 },

    /// Grid/trajectory size mismatch between operands.
    #[error("mismatched grid sizes: {0} vs {1}")]
    GridMismatch(usize, usize),

    /// Mode index not resolvable on the grid.
    #[error("mode n = {n} not resolvable on grid of size {n_modes} (need |n| < n_modes/2)")]
    Unresolvable { n: i64, n_modes: usize },

    /// Solver configuration violates an invariant.
    #[error("invalid solver config: {0}")]
    Config(String),

    /// The solution exceeded the blow-up sentinel or produced NaN.
    #[error("blow-up detected at t = {t_last}: sup H^(1/2) norm {norm:.3e} (last good time {t_last})")]
    BlowUp { t_last: f64, norm: f64 },

    /// Precondition on a scenario parameter failed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Fit inputs too short.
    #[error("need at least {need} data points for the fit, got {got}")]
    FitTooShort { need: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
