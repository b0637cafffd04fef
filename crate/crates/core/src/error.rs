use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u16),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u16, u16),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("trellis length mismatch: {0} vs {1}")]
    TrellisLengthMismatch(usize, usize),
    #[error("span length mismatch: {0} vs {1}")]
    SpanAmbientMismatch(usize, usize),
    #[error("span length {l} out of range for n = {n}")]
    SpanLengthOutOfRange { l: isize, n: usize },
    #[error("subspace is not contained in the other")]
    NotContained,
    #[error("({a},{l}) is not a span of the given word")]
    NotASpan { a: usize, l: isize },
    #[error("dual trellis requires GF(2), got GF({0})")]
    UnsupportedField(u16),
    #[error("cover index must be >= 1, got {0}")]
    InvalidCover(usize),
    #[error("merge direction must be nonzero")]
    ZeroMergeDirection,
    #[error("trellis is not trim")]
    NotTrim,
    #[error("trellis degenerated to an empty edge set")]
    DegenerateTrellis,
    #[error("inconsistent generator dimensions")]
    InconsistentGenerators,
    #[error("cycle does not belong to the label code")]
    NotACycle,
    #[error("operation requires a {0} trellis")]
    Requires(&'static str),
    #[error("generators do not have full support: coordinate {0} is always zero")]
    NotFullSupport(usize),
    #[error("size bound exceeded: {what} = {got} > {bound}")]
    BoundExceeded {
        what: &'static str,
        got: usize,
        bound: usize,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
