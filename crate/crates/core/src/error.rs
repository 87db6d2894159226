use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty partition")]
    EmptyPartition,
    #[error("syntax error in partition text at {token:?}")]
    PartitionSyntax { token: String },
    #[error("non-positive part {0}")]
    NonPositivePart(i64),
    #[error("partitions of different totals: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("number of parts {t} out of range 1..={n}")]
    PartsOutOfRange { n: usize, t: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not nilpotent: rank of powers stabilizes at {rank} from power {power}")]
    NotNilpotent { power: usize, rank: usize },
    #[error("matrix is not upper-triangular Toeplitz")]
    NotToeplitz,
    #[error("malformed matrix dump: {0}")]
    MatrixDump(String),

    #[error("commutant basis verification failed for {lambda}: {detail}")]
    BasisVerification { lambda: Partition, detail: String },
    #[error("retry budget exhausted after {attempts} attempts (seed {seed})")]
    RetriesExhausted { attempts: usize, seed: u64 },
    #[error("Monte-Carlo inconsistency for {lambda}: {detail}")]
    MonteCarloInconsistency { lambda: Partition, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed two-block element token {0:?}")]
    ElementSyntax(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
