use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("r = {r} is outside the density domain {domain}")]
    Domain { r: f64, domain: String },

    #[error("invalid root placement: {0}")]
    RootPlacement(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("invalid samples: {0}")]
    Sample(String),

    #[error("invalid tabulated density: {0}")]
    Table(String),

    #[error("curve is not regular at t = {t} (|velocity| = {speed:e})")]
    Regularity { t: f64, speed: f64 },

    #[error("curve meets the origin at t = {t} where the density gradient is singular")]
    OriginSingularity { t: f64 },

    #[error("curve is not unit speed at t = {t} (|velocity| = {speed})")]
    NotUnitSpeed { t: f64, speed: f64 },

    #[error("circle passes through the origin (R = b)")]
    OriginOnCircle,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("search failed: {0}")]
    SearchFailure(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for errors raised by a construction that was built but failed
    /// its own numerical check.
    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}
