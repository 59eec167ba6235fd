use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures of the algebraic and geometric pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithmic Laplacian of the zero function")]
    ZeroLogArgument,
    #[error("pole at z = {0}")]
    Pole(String),
    #[error("space mismatch: dimension {left} vs {right} or differing weights")]
    SpaceMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weights must be strictly positive (coordinate {0})")]
    NonPositiveWeight(usize),
    #[error("conflicting weights at coordinate {index}: {left} vs {right}")]
    WeightConflict { index: usize, left: String, right: String },
    #[error("sections are linearly dependent over the function field")]
    DependentSections,
    #[error("zero section")]
    ZeroSection,
    #[error("empty span")]
    EmptySpan,
    #[error("veronese index out of range: n = {n}, i = {i}")]
    VeroneseRange { n: i64, i: i64 },
    #[error("degenerate metric: lambda^2 vanishes identically")]
    DegenerateMetric,
    #[error("constant map: both L-values vanish")]
    ConstantMap,
    #[error("the image of the forward transform is not of rank 2")]
    ReducibleImage,
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("theta must have modulus one, got {0}")]
    NonUnitTheta(String),
    #[error("case {0} takes no theta parameter")]
    ThetaNotApplicable(String),
}
