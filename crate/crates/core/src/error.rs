use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("zero entry in a form that requires nonzero entries")]
    ZeroEntry,
    #[error("algebra is not a division algebra")]
    NotDivision,
    #[error("unsupported residue structure: {0}")]
    UnsupportedResidue(String),
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("form is degenerate")]
    Degenerate,
    #[error("oracle could not decide: {0}")]
    OracleUndecided(String),
    #[error("unsupported involution: {0}")]
    UnsupportedInvolution(String),
    #[error("no central element with sigma(mu) = -mu")]
    NoSuchMu,
    #[error("no sigma-(anti)symmetric parameter found within the search bound")]
    NoSymmetricParameter,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("no parameters available: {0}")]
    NoParameters(String),
    #[error("extension degree must be odd, got {0}")]
    EvenDegree(u32),
    #[error("symbol not classifiable: {0}")]
    NotClassifiable(String),
    #[error("blow-up depth {0} exceeded")]
    DepthExceeded(u32),
    #[error("unsupported shape: {0}")]
    ShapeUnsupported(String),
    #[error("combination forbidden: {0}")]
    CombinationForbidden(String),
    #[error("element is not a unit of the order: {0}")]
    NotUnit(String),
    #[error("malformed request: {0}")]
    MalformedRequest(String),
    #[error("wrong case shape: {0}")]
    WrongCaseShape(String),
    #[error("search too large: {0} candidates")]
    SearchTooLarge(u128),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    pub fn precision(msg: impl Into<String>) -> Self {
        Error::InsufficientPrecision(msg.into())
    }

    /// Name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InsufficientPrecision(_) => "InsufficientPrecision",
            Error::ZeroEntry => "ZeroEntry",
            Error::NotDivision => "NotDivision",
            Error::UnsupportedResidue(_) => "UnsupportedResidue",
            Error::UnsupportedBase(_) => "UnsupportedBase",
            Error::Degenerate => "Degenerate",
            Error::OracleUndecided(_) => "OracleUndecided",
            Error::UnsupportedInvolution(_) => "UnsupportedInvolution",
            Error::NoSuchMu => "NoSuchMu",
            Error::NoSymmetricParameter => "NoSymmetricParameter",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::NoParameters(_) => "NoParameters",
            Error::EvenDegree(_) => "EvenDegree",
            Error::NotClassifiable(_) => "NotClassifiable",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::ShapeUnsupported(_) => "ShapeUnsupported",
            Error::CombinationForbidden(_) => "CombinationForbidden",
            Error::NotUnit(_) => "NotUnit",
            Error::MalformedRequest(_) => "MalformedRequest",
            Error::WrongCaseShape(_) => "WrongCaseShape",
            Error::SearchTooLarge(_) => "SearchTooLarge",
            Error::Inconsistent(_) => "Inconsistent",
            Error::Schema(_) => "Schema",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::MalformedRequest(_) => 1,
            Error::InsufficientPrecision(_) => 3,
            _ => 2,
        }
    }
}
