use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,

    #[error("a word of height 0 has no height representation")]
    HeightZero,

    #[error("expansion parameter k = {k} must exceed the exponent defect {defect}")]
    ExpansionParameter { k: u64, defect: u64 },

    #[error("expansion would produce {len} letters, above the bound of {bound}")]
    ExpansionTooLarge { len: String, bound: usize },

    #[error("requested length {0} is outside the word")]
    LengthOutOfRange(String),

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("letter '{0}' has no assigned value")]
    Unassigned(char),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn add_exp(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn mul_exp(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}
