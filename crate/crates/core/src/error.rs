use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("wave speed a = {0} must exceed 1/2")]
    InvalidWaveSpeed(f64),

    #[error("characteristic roots at xi = {xi:e} are degenerate: gap {gap:e} below {tol:e}")]
    DegenerateRoots { xi: f64, gap: f64, tol: f64 },

    #[error("|xi| = {xi} lies outside the {zone} zone")]
    ZoneViolation { xi: f64, zone: &'static str },

    #[error("ODE integrator stalled at t = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("frequency cutoff {cutoff} leaves relative tail mass {tail:e}")]
    Resolution { cutoff: f64, tail: f64 },

    #[error("tail bound fails: {0:e} of the weighted mass lies beyond the integration range")]
    TailDivergence(f64),

    #[error("field has relative magnitude {0:e} at the frequency boundary")]
    TailWarning(f64),

    #[error("power-law fit needs {need} samples in the window, found {found}")]
    InsufficientSamples { found: usize, need: usize },

    #[error("non-positive sample y = {y} at t = {t}")]
    NonPositiveSample { t: f64, y: f64 },

    #[error("mean condition violated: P_w1 = {0:e}")]
    MeanConditionViolated(f64),

    #[error("numerical blow-up at t = {t}: max |field| = {max:e}")]
    Overflow { t: f64, max: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
