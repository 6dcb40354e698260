use thiserror::Error;

/// Every failure mode of the engine.
///
/// Variants split into two families: input errors (bad data, malformed
/// objects) and stabilization failures (the finite window, horizon or
/// denominator set was too small to decide the answer). The CLI maps the
/// second family to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("not a complex: composite is nonzero in degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("{op} needs data outside the window in degree {degree}, but the edge tag is unknown")]
    Poisoned { op: &'static str, degree: i64 },
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("not an Euler unit: character {0} is trivial")]
    NotEulerUnit(String),
    #[error("grading error: {0}")]
    Grading(String),
    #[error("denominator not allowed: {0}")]
    DenominatorNotAllowed(String),
    #[error("cannot dualize: {0}")]
    CannotDualize(String),
    #[error("horizon error: {0}")]
    Horizon(String),
    #[error("torsion required: {0}")]
    TorsionRequired(String),
    #[error("trust window too small: {0}")]
    TrustWindow(String),
    #[error("stabilization failed, enlarge the denominator set: {0}")]
    EnlargeS(String),
    #[error("mixed isotropy modes")]
    MixedIsotropy,
    #[error("unknown catalogue entry: {0}")]
    UnknownEntry(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures caused by a finite window, horizon or denominator
    /// set rather than by bad input.
    pub fn is_stabilization(&self) -> bool {
        matches!(
            self,
            Error::Poisoned { .. } | Error::Horizon(_) | Error::TrustWindow(_) | Error::EnlargeS(_)
        )
    }

    /// Short machine-readable reason tag.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::MalformedMap(_) => "malformed-map",
            Error::NotAComplex { .. } => "not-a-complex",
            Error::Poisoned { .. } => "poisoned",
            Error::Lattice(_) => "lattice",
            Error::NotEulerUnit(_) => "not-an-euler-unit",
            Error::Grading(_) => "grading",
            Error::DenominatorNotAllowed(_) => "denominator-not-allowed",
            Error::CannotDualize(_) => "cannot-dualize",
            Error::Horizon(_) => "horizon",
            Error::TorsionRequired(_) => "torsion-required",
            Error::TrustWindow(_) => "trust-window",
            Error::EnlargeS(_) => "enlarge-s",
            Error::MixedIsotropy => "mixed-isotropy",
            Error::UnknownEntry(_) => "unknown-entry",
            Error::Parse { .. } => "parse",
            Error::Unsupported(_) => "unsupported",
            Error::Invalid(_) => "invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
