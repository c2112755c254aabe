use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label sets differ: {left} labels vs {right} labels")]
    LabelMismatch { left: usize, right: usize },
    #[error("empty label set")]
    EmptyLabels,
    #[error("vector has negative degree {0}")]
    NegativeDegree(String),
    #[error("not a unit: degree is {0}")]
    NotAUnit(String),
    #[error("bottom element is not a valid input here")]
    BottomInput,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} at position {pos} is outside x1..x{dim}")]
    VariableOutOfRange { index: String, pos: usize, dim: usize },
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("operation undefined for the zero polynomial (the function -inf)")]
    ZeroPolynomial,
    #[error("rays {first} and {second} have the same primitive direction")]
    DuplicateDirection { first: usize, second: usize },
    #[error("ray {index} has nonpositive weight {weight}")]
    NonPositiveWeight { index: usize, weight: String },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("row {row} is not in the row lattice")]
    NoIntegerSolution { row: usize },
    #[error("row {row} is outside the rational span of the lattice")]
    OutsideSpan { row: usize },
    #[error("no semiring homomorphism with these images: label {label} matches no source column")]
    NotGeometric { label: usize },
    #[error("point lies in the support (ray {ray})")]
    PointInSupport { ray: usize },
    #[error("invalid input: {0}")]
    Input(String),
}
