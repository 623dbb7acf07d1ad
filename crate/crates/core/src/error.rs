use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("non-integral mutation: {numerator} is not divisible by {divisor}")]
    NonIntegral { numerator: String, divisor: String },

    #[error("invalid mutation slot {0} (expected 1, 2 or 3)")]
    InvalidSlot(usize),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("height {requested} exceeds the limit {limit}")]
    DepthLimit { requested: usize, limit: usize },

    #[error("value exceeds the digit budget of {budget} digits")]
    DigitBudget { budget: usize },

    #[error("empty region")]
    EmptyRegion,

    #[error("malformed polygon: {0}")]
    MalformedPolygon(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.into(),
        }
    }
}
