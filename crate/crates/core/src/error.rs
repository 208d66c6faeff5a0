use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic must be 0 or an odd prime below 2^32, got {0}")]
    InvalidCharacteristic(u64),
    #[error("scalars over different fields (characteristic {left} vs {right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("truncation mismatch: E({left}) vs E({right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("truncation E({required}) needed but only E({available}) available")]
    TruncationOverflow { required: usize, available: usize },
    #[error("generator index {index} outside E({n})")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("cannot draw {requested} monomials of parity {parity} from E({n}) under {grading}")]
    ImpossibleParity {
        grading: String,
        parity: u8,
        n: usize,
        requested: usize,
    },
    #[error("variable {variable} must be assigned an element of parity {expected}")]
    ParityMismatch { variable: String, expected: u8 },
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error("g-polynomial needs a nonempty list of distinct odd variables")]
    EmptyVariables,
    #[error("template {template} needs {needed} variables of each kind, only {available} available")]
    TooFewVariables {
        template: String,
        needed: usize,
        available: usize,
    },
    #[error("invalid grading {0:?}: expected kstar:K, inf or k:K")]
    GradingParse(String),
    #[error("cannot parse polynomial: {0}")]
    PolyParse(String),
    #[error("finite-difference window {window} does not fit a table of {len} degrees")]
    WindowTooLarge { window: usize, len: usize },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
