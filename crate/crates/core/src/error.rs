use alloc::string::String;

/// Errors raised by group construction, transforms, norms and the verifier.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported group kind `{0}`")]
    UnsupportedKind(String),
    #[error("invalid band limit {0}")]
    InvalidBand(f64),
    #[error("irrep `{label}`: {reason}")]
    InvalidIrrep { label: String, reason: String },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("quadrature fails Schur orthogonality (max deviation {0:e})")]
    SelfTestFailed(f64),
    #[error("unknown irrep label `{0}`")]
    UnknownLabel(String),
    #[error("index ({i}, {j}) out of range for an irrep of dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("element does not belong to this group: {0}")]
    InvalidElement(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coefficient window does not match the group's dual window")]
    WindowMismatch,
    #[error("sampled function cannot be evaluated off the quadrature nodes")]
    NotEvaluable,
    #[error("exponent p = {0} must satisfy p >= 1")]
    InvalidExponent(f64),
    #[error("exponents out of order: p = {p} > q = {q}")]
    ExponentOrder { p: f64, q: f64 },
    #[error("alpha = {0} must lie in (1, 2)")]
    InvalidAlpha(f64),
    #[error("smoothness s = {0} must be nonnegative and finite")]
    InvalidSmoothness(f64),
    #[error("need t > s (and s > 0 where required), got s = {s}, t = {t}")]
    InvalidPair { s: f64, t: f64 },
    #[error("missing weight for irrep `{0}`")]
    MissingWeight(String),
    #[error("weight for `{label}` must be finite and nonnegative, got {value}")]
    InvalidWeight { label: String, value: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Result alias for this crate.
pub type Result<T> = core::result::Result<T, Error>;
