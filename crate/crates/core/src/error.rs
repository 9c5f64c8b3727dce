use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected {expected} points, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("duplicate point in predicate input")]
    DuplicatePoint,
    #[error("coordinate {value} outside [1, {n}]")]
    OutOfRange { value: i64, n: i64 },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("all coefficients are zero")]
    ZeroSurface,
    #[error("degenerate: points lie on a hyperplane")]
    Degenerate,
    #[error("surface is not a sphere with positive squared radius")]
    EmptySphere,
    #[error("surface coefficients do not fit in 128 bits")]
    CoefficientOverflow,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
