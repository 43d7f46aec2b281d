use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (max |H - H^dagger| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("unknown basis label {0}")]
    UnknownLabel(String),

    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),

    #[error("time {t:e} lies outside the schedule span [0, {end:e}]")]
    OutsideSchedule { t: f64, end: f64 },

    #[error("step size underflow at t = {t:e} (required step {h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("Hermitian eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("pulse area {area} differs from the required {expected}")]
    NotNormalized { area: f64, expected: f64 },

    #[error("kappa factor not converged: {at_b} at B, {at_2b} at 2B")]
    KappaNotConverged { at_b: f64, at_2b: f64 },

    #[error("input |{label}>: {source}")]
    Input { label: String, source: Box<Error> },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::StepUnderflow { .. }
            | Error::NoConvergence { .. }
            | Error::KappaNotConverged { .. } => true,
            Error::Input { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    /// Process exit status: 2 for bad input or configuration, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter { .. }
            | Error::UnknownLabel(_)
            | Error::DuplicateLabel(_)
            | Error::OutsideSchedule { .. }
            | Error::NotNormalized { .. }
            | Error::Config(_)
            | Error::Io(_) => 2,
            Error::Input { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {value}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Error::param("alpha", "bad").exit_code(), 2);
        assert_eq!(Error::Config("x".into()).exit_code(), 2);
        let step = Error::StepUnderflow { t: 0.1, h: 1e-12 };
        assert!(step.is_numerical());
        assert_eq!(step.exit_code(), 3);
        let wrapped = Error::Input {
            label: "11".into(),
            source: Box::new(step),
        };
        assert!(wrapped.is_numerical());
        assert_eq!(wrapped.exit_code(), 3);
        assert!(wrapped.to_string().starts_with("input |11>"));
    }
}
