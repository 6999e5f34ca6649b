use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incomparable values: {0}")]
    IncomparableValues(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("invalid block `{name}`: {reason}")]
    InvalidBlock { name: String, reason: String },

    #[error("empty connected-sum expression")]
    EmptyExpression,

    #[error("multiplicity must be positive (got {0})")]
    ZeroMultiplicity(u32),

    #[error("catalog line {line}: {reason}")]
    CatalogSyntax { line: usize, reason: String },

    #[error("catalog name collision: `{0}`")]
    NameCollision(String),

    #[error("unknown block `{0}`")]
    UnknownBlock(String),

    #[error("enumeration of {count} sign patterns exceeds limit {limit}")]
    SizeLimit { count: u128, limit: u128 },

    #[error("rank {rank} exceeds limit {limit}")]
    RankLimit { rank: usize, limit: usize },

    #[error("form is not diagonalizable: {0}")]
    NotDiagonalizable(String),

    #[error("form is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("form is not negative definite")]
    NotNegativeDefinite,

    #[error("invalid period subspace: {0}")]
    InvalidPeriod(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular linear system")]
    SingularSystem,

    #[error("expression cannot be split as required: {0}")]
    MalformedSplit(String),

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("no dissolve rewrite applies")]
    NoRewrite,

    #[error("sign of the input is unknown")]
    SignUnknown,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
