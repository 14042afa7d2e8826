use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("time argument must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("measurement times out of order: t_i = {t_i} > t_j = {t_j}")]
    ReversedTimes { t_i: f64, t_j: f64 },

    #[error("tau grid must be nonempty, nonnegative and strictly increasing")]
    InvalidTauGrid,

    #[error("tabulated spectrum line {line}: {reason}")]
    Tabulation { line: usize, reason: String },

    #[error("step size {dt} too large: |G| = {modulus} at t = {t}")]
    StepTooLarge { dt: f64, t: f64, modulus: f64 },

    #[error("norm drift {drift:.3e} at t = {t} exceeds 1e-6, reduce the step size (dt = {dt})")]
    NormDrift { dt: f64, t: f64, drift: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::StepTooLarge { .. } | Error::NormDrift { .. })
    }
}
