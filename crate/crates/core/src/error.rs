use thiserror::Error;

/// Errors raised while building or evaluating a link scenario.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid value for `{field}`: {message}")]
    Invalid { field: String, message: String },

    #[error("value outside model domain: {0}")]
    ModelDomain(String),

    #[error("unsupported RF frequency {0} GHz (rain table covers {1}..={2} GHz)")]
    UnsupportedFrequency(f64, f64, f64),

    #[error("exponentiated Weibull fit undefined for scintillation index {0}: {1}")]
    FitDomain(f64, String),

    #[error("quadrature did not converge: achieved relative error {achieved:.3e}, requested {requested:.1e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("series did not converge within {terms} terms: truncation bound {bound:.3e}")]
    SeriesCap { terms: usize, bound: f64 },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

impl Error {
    pub(crate) fn invalid(field: &str, message: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// True for failures of the numerical machinery rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::SeriesCap { .. } | Error::FitDomain(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
