use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the empty word has no period")]
    EmptyWord,
    #[error("word of length {len} is too short, at least 2 letters are required")]
    TooShort { len: usize },
    #[error("position {p} is out of range for a word of length {len} (valid: 1..{len})")]
    InvalidPosition { p: usize, len: usize },
    #[error("period {q} is out of range for a word of length {len} (valid: 1..={len})")]
    InvalidPeriod { q: usize, len: usize },
    #[error("invalid character {ch:?} at index {index} (alphabet size {alphabet})")]
    InvalidLetter {
        index: usize,
        ch: char,
        alphabet: u8,
    },
    #[error("letter {letter} at index {index} is not in the ternary alphabet")]
    Alphabet { index: usize, letter: u8 },
    #[error("the factor must be nonempty")]
    EmptyFactor,
    #[error("factor w[{i}..{j}] is out of range for a word of length {len}")]
    InvalidFactor { i: usize, j: usize, len: usize },
    #[error("{0}")]
    Range(String),
    #[error("found only {found} of {requested} family words within a prefix of length {bound}")]
    InsufficientBound {
        found: usize,
        requested: usize,
        bound: usize,
    },
    #[error("estimated {estimated} items exceeds the configured ceiling of {ceiling}")]
    ResourceGuard { estimated: u64, ceiling: u64 },
}
