use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero pivot at index {index}: matrix is not positive definite")]
    ZeroPivot { index: usize },
    #[error("negative pivot at index {index}: matrix is not positive definite")]
    NegativePivot { index: usize },
    #[error("pivot D[{index}] = {value} is not rational; no exact square root available")]
    NonRationalPivot { index: usize, value: String },
    #[error("exact result needs cyclotomic order {order}, above the limit {bound}")]
    FieldTooLarge { order: u64, bound: u64 },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: u128, bound: u64 },
    #[error("group is not transitive on its points")]
    NotTransitive,
    #[error("subspace is not invariant under generator {generator}")]
    NotInvariant { generator: usize },
    #[error("representations are defined on different groups")]
    GroupMismatch,
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("estimated memory {needed} bytes exceeds budget {budget} bytes")]
    MemoryBudget { needed: u64, budget: u64 },
    #[error("orbit exceeds the size budget of {0} elements")]
    OrbitTooLarge(usize),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("no invertible candidate after {0} attempts")]
    RetriesExhausted(usize),
    #[error("centraliser basis check failed: {0}")]
    BadBasis(String),
    #[error("input is not a permutation representation")]
    NotPermutation,
    #[error("{matrix} is not invariant under generator {generator}: entry ({row}, {col}) differs from its image")]
    SdpNotInvariant { matrix: String, generator: usize, row: usize, col: usize },
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
