use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position} (ring has {nvars} variables)")]
    UnknownVariable { name: String, position: usize, nvars: usize },

    #[error("coefficient `{text}` is not valid in {field}")]
    InvalidCoefficient { text: String, field: String },

    #[error("ring mismatch: {0}")]
    ContextMismatch(String),

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid degree type: {0}")]
    InvalidDegreeType(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("determinant is identically zero")]
    ZeroDeterminant,

    #[error("congruence matrix mixes rows of different degrees ({row} and {col})")]
    BlockStructure { row: usize, col: usize },

    #[error("Groebner pair budget of {budget} exhausted")]
    PairBudgetExhausted { budget: usize },

    #[error("quotient has infinite colength (staircase not finite)")]
    InfiniteStaircase,

    #[error("field of characteristic {characteristic} too small for colength {colength}")]
    FieldTooSmall { characteristic: u32, colength: usize },

    #[error("field too large for exhaustive enumeration: {0}")]
    FieldTooLarge(String),

    #[error("node counts disagree between generic charts ({first} vs {second}); retry with another seed")]
    ChartDisagreement { first: usize, second: usize },

    #[error("singular locus is not zero-dimensional (infinite colength)")]
    InfiniteColength,

    #[error("point is not on the surface")]
    NotOnSurface,

    #[error("negative h1 at twist {twist}: h0 = {h0}, chi = {chi}")]
    NegativeH1 { twist: i64, h0: i64, chi: i64 },

    #[error("twist range too small: {0}")]
    RangeTooSmall(String),

    #[error("operation requires a quartic surface, got degree {0}")]
    NotQuartic(u32),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
