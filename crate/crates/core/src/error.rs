use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus {0}: must be a prime in (5, 2^32)")]
    InvalidModulus(u64),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("form is not homogeneous: found terms of degree {first} and {other}")]
    NotHomogeneous { first: u32, other: u32 },
    #[error("unknown variable y{index} (ring has {n_vars} variables)")]
    UnknownVariable { index: usize, n_vars: usize },
    #[error("operands live in different polynomial rings")]
    MixedRings,
    #[error("variable index {index} out of range for {n_vars} variables")]
    IndexOutOfRange { index: usize, n_vars: usize },
    #[error("all input forms are zero")]
    AllZero,
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("the zero form has no apolar algebra")]
    ZeroForm,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("empty factor list")]
    EmptyFactorList,
    #[error("search budget must be positive")]
    BudgetZero,
    #[error("unsupported socle degree {0}")]
    UnsupportedSocleDegree(u32),
    #[error("no certificate found for h_2 in {0:?}")]
    RealizationGap(Vec<u64>),
    #[error("bound table has no entry for codimension {0:?}")]
    IncompleteTable(Vec<usize>),
    #[error("corrupt cache at line {line}, column {column}: {msg}")]
    CorruptCache {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("certificate does not verify: {0}")]
    InvalidCertificate(String),
    #[error("{0}")]
    Io(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
