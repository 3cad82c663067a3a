use thiserror::Error;

use crate::analysis::IdVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("total mass {total} exceeds one")]
    MassExceedsOne { total: f64 },

    #[error("pmf is not normalized: stored mass plus tail bound is {total}")]
    NotNormalized { total: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no atom at the origin (p0 = {p0}); try shift detection")]
    ZeroAtOrigin { p0: f64 },

    #[error("no atom above the negativity tolerance within the truncation")]
    AllMassInTail,

    #[error("law has no compound Poisson factorization: {0}")]
    NotFactorizable(Box<IdVerdict>),

    #[error("verdict does not satisfy the gap criterion hypotheses: {0}")]
    VerdictMismatch(Box<IdVerdict>),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
