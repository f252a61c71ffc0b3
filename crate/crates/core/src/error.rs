use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power >= 2")]
    NotPrimePower(u64),
    #[error("field order {0} is not supported (maximum is 256)")]
    Unsupported(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(usize),
    #[error("operands belong to different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: usize, right: usize },
    #[error("element {value} is out of range for GF({q})")]
    ElementOutOfRange { value: u64, q: usize },
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("enumeration of {what} needs {needed} items, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },
    #[error("profile of weight {norm} does not fit in length {len}")]
    ProfileTooHeavy { norm: u64, len: u64 },
    #[error("weight profiles have mismatched lengths ({expected} vs {got})")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid label system: {0}")]
    InvalidLabels(String),
    #[error("profile set is not closed downward: {0} is missing")]
    NotADownSet(String),
    #[error("F_q \u{2260} F_2 required for co-weight k >= 1 (got q = {q}, k = {k})")]
    UnsupportedField { q: u64, k: u64 },
    #[error("bad arguments: {0}")]
    BadArguments(String),
    #[error("oracle result is not exhaustive or has no witnesses")]
    NotExhaustive,
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            budget,
        }
    }
}
