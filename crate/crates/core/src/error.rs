use thiserror::Error;

use crate::parse::ParseError;

/// Failures of the local-algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("generators have different truncation degrees ({first} vs {other})")]
    MixedTruncation { first: u32, other: u32 },
    #[error("colength not finite: quotient dimension still >= {lower_bound} at truncation {truncation} (ideal is probably not m-primary)")]
    NotFinite { truncation: u32, lower_bound: u64 },
    #[error("truncation degree {needed} needed but only {available} is known")]
    TruncationTooLow { needed: u32, available: u32 },
    #[error("germ must vanish at the origin (nonzero constant term)")]
    NotAGerm,
}

/// Failures when computing invariants or evaluating criteria.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("germ is not reduced (Tjurina number is not finite)")]
    NonReduced,
    #[error("topological invariants are only available for catalog germs; `{0}` is not recognised as one")]
    TopologicalNonCatalog(String),
    #[error("ideal does not contain the Tjurina ideal: {0}")]
    NotContainingTjurina(String),
    #[error("intersection multiplicity {i} does not exceed colength {d}; the (f, I, g) triple is illegitimate")]
    LemmaViolation { d: u64, i: u64 },
    #[error("inequality chain violated: {0}")]
    ChainViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
