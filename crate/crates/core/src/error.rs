use alloc::string::String;

use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("symbol `{0}` listed twice")]
    DuplicateSymbol(char),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(char),
    #[error("letter index {index} out of range for an alphabet of size {size}")]
    LetterOutOfRange { index: usize, size: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("formulas are only evaluated on non-empty words")]
    EmptyWord,
    #[error("free variable `{0}` has no assigned position")]
    UnassignedVariable(String),
    #[error("variable `{var}` assigned position {pos}, word has length {len}")]
    PositionOutOfRange { var: String, pos: usize, len: usize },
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: String, found: String },
    #[error("quantifier over `{language}` needs {expected} bodies, got {found}")]
    BodyCount { language: String, expected: usize, found: usize },
    #[error("Lindström quantifier must bind at least one variable")]
    EmptyTuple,
    #[error("pivot variable `{0}` is bound inside the formula")]
    BoundPivot(String),
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("symbol `{0}` clashes with an existing terminal")]
    SymbolClash(char),
    #[error("grammar has no complement grammar attached")]
    MissingComplement,
    #[error("expected a grammar over a one-letter alphabet, got {0} letters")]
    NonUnaryGrammar(usize),
    #[error("grammar is not in Chomsky normal form: {0}")]
    NotCnf(String),
    #[error("element index {0} is not in the groupoid")]
    UnknownElement(usize),

    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, limit: usize },
    #[error("rank {requested} exceeds the configured cap {cap}")]
    RankCap { requested: usize, cap: usize },
    #[error("type monoid outgrew the budget of {0} elements")]
    TypeBudget(usize),
    #[error("rank-{0} type of a concatenation was not found among the closure elements")]
    IllDefinedConcat(usize),

    #[error("string is not ({l},{m})-bounded")]
    NotBounded { l: usize, m: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}
