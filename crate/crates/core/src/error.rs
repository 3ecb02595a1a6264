use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element `{0}` listed twice")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    AntisymmetryViolation(String, String),
    #[error("a lattice needs at least one element")]
    EmptyLattice,
    #[error("`{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("element `{0}` has no complement")]
    NotComplemented(String),
    #[error("not a nucleus: {0}")]
    NotANucleus(String),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("{what} exceeds the bound {limit}")]
    BoundExceeded { what: String, limit: usize },
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{0} needs an explicit bound")]
    BoundRequired(String),
    #[error("ill-sorted: {0}")]
    IllSorted(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid site: {0}")]
    InvalidSite(String),
    #[error("invalid theory extension: {0}")]
    InvalidExtension(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("duality check failed: {0}")]
    DualityFailure(String),
}

impl Error {
    pub(crate) fn bound(what: impl Into<String>, limit: usize) -> Self {
        Error::BoundExceeded { what: what.into(), limit }
    }
}
