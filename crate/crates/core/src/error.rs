use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: String },
    #[error("field order {0} exceeds the supported cap of 65536")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} does not belong to GF({q})")]
    FieldMismatch { value: u64, q: u32 },
    #[error("GF(2) has no primitive element of order q-1 > 1")]
    TrivialField,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("operation requires odd characteristic")]
    CharacteristicTwo,
    #[error("operation requires characteristic two")]
    CharacteristicNotTwo,
    #[error("duplicate evaluation node {0}")]
    DuplicateNode(u32),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("word degree {degree:?} outside [k, n-1] = [{k}, {max}]")]
    DegreeOutOfRange {
        degree: Option<usize>,
        k: usize,
        max: usize,
    },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("parameters outside every closed-form clause: {0}")]
    OutOfClosedFormRange(String),
    #[error("distance undecidable within caps: {0}")]
    Undecidable(String),
    #[error("inconsistent verdicts: {0}")]
    InconsistencyDetected(String),
    #[error("no witness exists: {0}")]
    NoWitness(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate constant in construction: {0}")]
    DegenerateConstant(String),
    #[error("structured search exhausted: {0}")]
    SearchExhausted(String),
    #[error("zero coefficient in quadratic form")]
    ZeroCoefficient,
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
