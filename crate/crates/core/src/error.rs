use alloc::string::String;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("structure constants violate {0}")]
    InvalidStructure(&'static str),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("group law is only implemented up to step 4")]
    StepTooHigh,
    #[error("basis is not a weak Malcev basis")]
    NotMalcevBasis,
    #[error("subspace is not rational with respect to the lattice")]
    NotRational,
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("chain is not an increasing sequence of ideals")]
    NotIdealChain,
    #[error("lattice has not been verified as a uniform subgroup")]
    NotVerified,
    #[error("parameters are not a member of the canonical set")]
    NotMember,
    #[error("matrix does not have the required shape")]
    BadShape,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("algebra has no abelian factor")]
    NoAbelianFactor,
    #[error("operation is not supported for algebra `{0}`")]
    Unsupported(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
