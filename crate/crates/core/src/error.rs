use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("modulus degree {got} does not match extension degree {want}")]
    DegreeMismatch { want: usize, got: usize },
    #[error("unsupported field parameters: {0}")]
    BadField(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("generators do not span the ambient space")]
    RankDeficient,
    #[error("insufficient precision")]
    InsufficientPrecision,
    #[error("precision cap {0} reached without stabilization")]
    PrecisionCap(i64),
    #[error("zero input")]
    ZeroInput,
    #[error("zero element")]
    ZeroElement,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("undefined symbol '{0}'")]
    UndefinedSymbol(String),
    #[error("wrong coefficient field")]
    WrongCoefficientField,
    #[error("lattices are not nested")]
    NotNested,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("component labels do not match")]
    LabelMismatch,
    #[error("matrix is not block upper triangular")]
    NotTriangular,
    #[error("matrix is not in the standard parabolic")]
    NotParabolic,
    #[error("cofactor not coprime after extraction")]
    NotCoprimeAfterExtraction,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
