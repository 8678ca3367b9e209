use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module. Domain errors describe bad input,
/// `Numerical` means a computation produced something it should not have.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("inconsistent fusion triple: {0}")]
    InconsistentFusionTriple(String),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("color {0} is not integrable at this level")]
    NonIntegrableColor(String),
    #[error("unsupported theory: {0}")]
    UnsupportedTheory(String),
    #[error("unsupported colors: {0}")]
    UnsupportedColors(String),
    #[error("unsupported link: {0}")]
    UnsupportedLink(String),
    #[error("unknown link '{0}'")]
    UnknownLink(String),
    #[error("diagram has {crossings} crossings, the state-sum limit is {limit}")]
    OversizeDiagram { crossings: usize, limit: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRepresentation(_) => "invalid-representation",
            Error::InconsistentFusionTriple(_) => "inconsistent-fusion-triple",
            Error::ShapeViolation(_) => "shape-violation",
            Error::NonIntegrableColor(_) => "non-integrable-color",
            Error::UnsupportedTheory(_) => "unsupported-theory",
            Error::UnsupportedColors(_) => "unsupported-colors",
            Error::UnsupportedLink(_) => "unsupported-link",
            Error::UnknownLink(_) => "unknown-link",
            Error::OversizeDiagram { .. } => "oversize-diagram",
            Error::InvalidDiagram(_) => "invalid-diagram",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Numerical(_) => "numerical-failure",
        }
    }

    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}
