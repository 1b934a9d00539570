use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: missing or malformed `p cnf` header")]
    MissingHeader { line: usize },
    #[error("header declares {declared} clauses but {actual} were found")]
    HeaderMismatch { declared: usize, actual: usize },
    #[error("line {line}: literal {literal} exceeds declared variable count {num_vars}")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        num_vars: usize,
    },
    #[error("line {line}: empty clause")]
    ZeroWidthClause { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("formula has no variables")]
    EmptyFormula,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph has a single vertex")]
    SingleVertex,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set covers the whole graph")]
    FullSet,
    #[error("formula has fewer than two clauses")]
    TooFewClauses,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bridge clauses ({bridges}) exceed the clause budget ({budget})")]
    InfeasibleBudget { bridges: usize, budget: usize },
    #[error("vertex {vertex} has degree {degree}, limit is {limit}")]
    DegreeTooHigh {
        vertex: usize,
        degree: usize,
        limit: usize,
    },
    #[error("graph is not connected")]
    NotConnected,
    #[error("fit needs at least 3 positive points, got {points}")]
    DegenerateFit { points: usize },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
