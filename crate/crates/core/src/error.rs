use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("cyclic parameter binding through `{0}`")]
    CyclicBinding(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("element does not belong to algebra `{0}`")]
    SpecMismatch(String),

    #[error("deformation matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),

    #[error("relation `{0}` is not weight-homogeneous")]
    InhomogeneousRelation(String),

    #[error("rewrite rule `{0}` is not oriented by the monomial order")]
    NonTerminating(String),

    #[error("relation `{0}` must have scalar coefficients")]
    NonScalarRelation(String),

    #[error("rewrite budget of {0} steps exceeded")]
    BudgetExceeded(usize),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("degree out of supported range: {0}")]
    DegreeOutOfRange(String),

    #[error("frames are not orthonormal: {0}")]
    GramCheckFailed(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
