use thiserror::Error;

pub type Result<T> = std::result::Result<T, HboError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HboError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("size mismatch: expected {expected} samples, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("non-finite symbol value at lattice point {k:?}")]
    NonFiniteSymbol { k: Vec<i64> },

    #[error("non-finite field value")]
    NonFiniteField,

    #[error("negative-order operator on non-zero-mean field (mean {mean:e}, norm {norm:e})")]
    NonZeroMean { mean: f64, norm: f64 },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("unsupported multi-index {0:?}")]
    UnsupportedMultiIndex(Vec<u32>),

    #[error("numerical blow-up at t = {time}")]
    BlowUp { time: f64 },

    #[error("boundary-decay guard violated: boundary/max ratio {ratio:e} exceeds {threshold:e}")]
    BoundaryGuard { ratio: f64, threshold: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("frequency point is the origin")]
    ZeroFrequency,

    #[error("missing derivative data: need {needed} spectral fields, got {got}")]
    MissingDerivativeData { needed: usize, got: usize },

    #[error("insufficient samples: found {found}, need at least {needed}")]
    InsufficientSamples { found: usize, needed: usize },

    #[error("grid too large for direct quadrature: {points} points (limit {limit})")]
    GridTooLarge { points: usize, limit: usize },

    #[error("zero datum")]
    ZeroDatum,
}
