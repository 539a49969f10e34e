use thiserror::Error;

/// Position-annotated failure from the polynomial text parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message} (token `{token}`)")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: expected {expected}, found {found}")]
    ContextMismatch { expected: String, found: String },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("{component} is not weighted-homogeneous for the given weights")]
    NotHomogeneous { component: String },

    #[error("no strictly positive weight system solves the degree constraints")]
    NoSolution,

    #[error("invalid weight system: {0}")]
    InvalidWeights(String),

    #[error("ideal has no nonzero generators")]
    ZeroIdeal,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("quotient algebra is infinite-dimensional")]
    InfiniteDimensional,

    #[error("{0} does not define an isolated complete intersection singularity")]
    NotIsolated(String),

    #[error("bad arity: {rows} rows need at least as many variables, have {nvars}")]
    BadArity { rows: usize, nvars: usize },

    #[error("all Jacobian minors vanish identically")]
    DegenerateJacobian,

    #[error("{0} does not vanish at the origin")]
    NotAtOrigin(String),

    #[error("generator {0} is neither f nor a maximal minor of the Jacobian of (h, f)")]
    UnknownGenerator(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
