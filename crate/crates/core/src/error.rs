use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}: unknown generator `{token}`")]
    UnknownGenerator { line: usize, token: String },

    #[error("line {line}: relation has an empty side")]
    EmptyRelationSide { line: usize },

    #[error("line {line}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, name: String },

    #[error("unknown generator `{0}` in word")]
    BadWord(String),

    #[error("{0:?} is not a relation word")]
    NotRelationWord(Word),

    #[error("presentation is not weakly C(3): relation word {0:?} is a product of at most two pieces")]
    NotWeaklyC3(Word),

    #[error("presentation is not weakly C(4) (weak_n = {0})")]
    NotWeaklyC4(String),

    #[error("{0:?} is neither empty nor a piece")]
    PieceExpected(Word),

    #[error("word of length {len} exceeds the brute-force limit of {limit}")]
    TooLong { len: usize, limit: usize },

    #[error("oracle budget exhausted")]
    BudgetExhausted,

    #[error("no weakly C(4) presentation found after {0} attempts")]
    RetriesExhausted(usize),

    #[error("more than one case shape matched: {0:?}")]
    AmbiguousCase(Vec<u8>),

    #[error("word begins with more than one complement of the same relation prefix")]
    AmbiguousComplement,

    #[error("word has no leading clean overlap prefix")]
    NoCleanOverlapPrefix,
}

pub type Result<T> = std::result::Result<T, Error>;
