use thiserror::Error;

/// Errors raised by the library.
///
/// Parameter errors carry the offending value so a caller (or the CLI) can
/// report it verbatim. Decode outcomes such as "no survivor" are reported
/// through [`crate::reconstruct::Outcome`] rather than through this type,
/// except where a caller explicitly asks for the decoded word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q = {q} is not a prime power")]
    NotPrimePower { q: u64 },

    #[error("field size q = {q} is outside the supported range [2, 65536]")]
    FieldSize { q: u64 },

    #[error("symbol index {index} does not belong to GF({q})")]
    ForeignSymbol { index: u32, q: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("multiplicity overflow: mu * |Y'| = {0} exceeds 2^20")]
    MultiplicityOverflow(u64),

    #[error("read set: {0}")]
    ReadSet(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("decoding failed: no candidate is consistent with every read")]
    DecodeFailure,

    #[error("ambiguous read set: {count} codewords are consistent with every read")]
    Ambiguous { count: usize },

    #[error("witness certification failed after {attempts} attempts")]
    Certification { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
