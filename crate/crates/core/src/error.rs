use thiserror::Error;

/// Errors shared across the crate. Each variant carries a stable machine
/// code (see [`Error::code`]) used by the CLI for structured error output.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a valid generalized Cartan matrix: {0}")]
    BadCartanMatrix(String),
    #[error("root ({0},{1}) is not a real root")]
    NotRealRoot(i64, i64),
    #[error("epsilon sign requested at a simple root; fixed by the SL2 convention")]
    SimpleRootCase,
    #[error("Weyl word is not reduced")]
    NotReduced,
    #[error("matrix shape does not match the a12 = -1 case")]
    WrongMatrixShape,
    #[error("truncation height {0} too small; need at least {1}")]
    HeightTooSmall(u32, u32),
    #[error("image not certified exact at this truncation height (basis element {0})")]
    TruncationLoss(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is reducible")]
    Reducible,
    #[error("invalid field element or field description: {0}")]
    BadField(String),
    #[error("edge-group injection is not a monomorphism: {0}")]
    InvalidInjection(String),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("delta must be 1, 2 or 4 (got {0})")]
    BadDelta(u64),
    #[error("normalization budget exceeded after {0} rewrite steps")]
    NormalizationBudgetExceeded(u64),
    #[error("orbit exploration truncated: {0}")]
    ExplorationTruncated(String),
    #[error("atom not expressible in the parabolic at this layer: {0}")]
    AtomNotInParabolic(String),
    #[error("matrix determinant is not 1")]
    DeterminantNotOne,
    #[error("affine oracle requires the Cartan matrix [[2,-2],[-2,2]]")]
    NotAffineCartan,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadCartanMatrix(_) => "bad_gcm",
            Error::NotRealRoot(_, _) => "not_real_root",
            Error::SimpleRootCase => "simple_root_case",
            Error::NotReduced => "not_reduced",
            Error::WrongMatrixShape => "wrong_matrix_shape",
            Error::HeightTooSmall(_, _) => "height_too_small",
            Error::TruncationLoss(_) => "truncation_loss",
            Error::NotPrime(_) => "not_prime",
            Error::Reducible => "reducible",
            Error::BadField(_) => "bad_field",
            Error::InvalidInjection(_) => "invalid_injection",
            Error::NotAGroup(_) => "not_a_group",
            Error::BadDelta(_) => "bad_delta",
            Error::NormalizationBudgetExceeded(_) => "budget_exceeded",
            Error::ExplorationTruncated(_) => "exploration_truncated",
            Error::AtomNotInParabolic(_) => "atom_not_in_parabolic",
            Error::DeterminantNotOne => "det_not_one",
            Error::NotAffineCartan => "not_affine_cartan",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
