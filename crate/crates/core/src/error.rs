use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("Jacobi identity fails on basis triple ({}, {}, {})", .triple[0], .triple[1], .triple[2])]
    JacobiFailure { triple: [usize; 3] },

    #[error("torus hint is not abelian: [{a}, {b}] != 0 (hint positions, 1-based)")]
    NotAbelian { a: usize, b: usize },

    #[error("torus is not maximal: centralizer contains {witness}, outside its span")]
    NotMaximal { witness: String },

    #[error("maximal torus search exhausted {attempts} attempts: {diagnostic}")]
    RetryBudgetExhausted { attempts: usize, diagnostic: String },

    #[error("cannot snap eigenvalue {value} to a Gaussian rational within tolerance {tol:e} (denominator bound {max_denominator})")]
    SnapFailure { value: String, tol: f64, max_denominator: u64 },

    #[error("exact re-verification failed: {0}")]
    ExactVerification(String),

    #[error("algebra is not of compact type: {0}")]
    NotCompactType(String),

    #[error("regular element annihilates root {root}")]
    NonRegular { root: String },

    #[error("change of basis is singular: {0}")]
    SingularBasis(String),

    #[error("torus dimension {0} is odd: the algebra is odd dimensional and admits no almost complex structure")]
    OddTorusDimension(usize),

    #[error("matrix does not square to -id (first failing column {column})")]
    NotComplexStructure { column: usize },

    #[error("dimension cap exceeded: level {level} would have dimension {dim} > {cap}")]
    DimensionCap { level: usize, dim: usize, cap: usize },

    #[error("inputs refer to different Lie algebras: {0}")]
    AlgebraMismatch(String),
}
