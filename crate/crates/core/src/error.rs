use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} outside 1..=16")]
    DegreeOutOfRange(u32),
    #[error("no default reduction polynomial for k = {0}; supply one explicitly")]
    NoDefaultPolynomial(u32),
    #[error("polynomial {poly:#x} does not have degree {k}")]
    WrongDegree { poly: u32, k: u32 },
    #[error("polynomial {poly} is reducible: factor {factor}")]
    Reducible { poly: String, factor: String },
    #[error("the trace form is degenerate")]
    DegenerateTraceForm,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("variable count {0} outside 2..=24")]
    VariableCount(u32),
    #[error("variable count {0} must be even")]
    OddVariableCount(u32),
    #[error("size mismatch: {left} vs {right} variables")]
    SizeMismatch { left: u32, right: u32 },
    #[error("invalid hex truth table: {0}")]
    Hex(String),
    #[error("point {point:#x} out of range for {n} variables")]
    PointOutOfRange { point: u32, n: u32 },
    #[error("basis vectors are linearly dependent (vector {0:#x})")]
    DependentBasis(u32),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("matrix is singular over F_2")]
    SingularMatrix,
    #[error("function is not bent: W({point:#x}) = {value}")]
    NotBent { point: u32, value: i64 },
    #[error("trace-form pairing needs n = 2k = {expected}, got n = {actual}")]
    PairingMismatch { expected: u32, actual: u32 },
    #[error("field element {0} is outside the field")]
    ElementOutOfRange(u32),
    #[error("duplicate spread line {0}")]
    DuplicateLine(String),
    #[error("selection has {actual} lines, expected {expected}")]
    SelectionSize { expected: usize, actual: usize },
    #[error("g must be balanced with g(0) = 0")]
    InvalidDillonG,
    #[error("subspace {index} has dimension {dim}, expected {expected}")]
    SubspaceDimension { index: usize, dim: usize, expected: usize },
    #[error("subspaces {first} and {second} intersect nontrivially")]
    SubspacesIntersect { first: usize, second: usize },
    #[error("{count} subspaces is neither 2^(k-1) nor 2^(k-1)+1 for k = {k}")]
    SubspaceCount { count: usize, k: u32 },
    #[error("k = {k} not supported for {mode} census (max {max})")]
    CensusRange { k: u32, mode: &'static str, max: u32 },
    #[error("identity check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
