use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("total density must be positive, got {0}")]
    NonPositiveDensity(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("equal molar masses ({0}) make the two-constituent reconstruction singular")]
    DegenerateReconstruction(f64),

    #[error("ratio {ratio} must lie strictly inside ({lower}, {upper})")]
    RatioOutOfRange { ratio: f64, lower: f64, upper: f64 },

    #[error("viscosity constraint violated: {0}")]
    ViscosityConstraint(String),

    #[error("density floor breach: constituent {constituent} in cell {cell} has density {value:e}")]
    FloorBreach {
        constituent: usize,
        cell: usize,
        value: f64,
    },

    #[error("non-finite value in field `{0}`")]
    NonFinite(&'static str),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
