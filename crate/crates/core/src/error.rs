use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse rotation number {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("operation requires an irrational rotation number, got {0}")]
    RationalNotAllowed(String),

    #[error("Newton iteration did not converge after {steps} steps (residual {residual:e})")]
    NonConvergence { steps: usize, residual: f64 },

    #[error("orbit has exact period {divisor}, not {period} (|f^{divisor}(0)| = {residual:e})")]
    WrongPeriod {
        period: u32,
        divisor: u32,
        residual: f64,
    },

    #[error("center lies in the wrong component: cycle rotation {found:?}/{q}, expected {p}/{q}")]
    WrongComponent { p: u32, q: u32, found: Option<u32> },

    #[error("no grid point with |f^q(0)| < {threshold} near the root of {p}/{q}")]
    NoGridCandidate { p: u32, q: u32, threshold: f64 },

    #[error("sector has {branches} return branches; expected at most two")]
    TooManyBranches { branches: usize },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("orbit escaped |z| > 2 at step {step}")]
    UnboundedOrbit { step: usize },

    #[error("ray pullback diverged at level {level}; last good point {last_good}")]
    NewtonDivergence { level: usize, last_good: Complex64 },
}

impl Error {
    /// Stable machine-greppable code for command-line diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "E_PARSE",
            Error::InvalidInput(_) => "E_INVALID_INPUT",
            Error::RationalNotAllowed(_) => "E_RATIONAL",
            Error::NonConvergence { .. } => "E_NONCONVERGENCE",
            Error::WrongPeriod { .. } => "E_WRONG_PERIOD",
            Error::WrongComponent { .. } => "E_WRONG_COMPONENT",
            Error::NoGridCandidate { .. } => "E_NO_GRID_CANDIDATE",
            Error::TooManyBranches { .. } => "E_TOO_MANY_BRANCHES",
            Error::Inconclusive(_) => "E_INCONCLUSIVE",
            Error::UnboundedOrbit { .. } => "E_UNBOUNDED_ORBIT",
            Error::NewtonDivergence { .. } => "E_NEWTON_DIVERGENCE",
        }
    }
}
