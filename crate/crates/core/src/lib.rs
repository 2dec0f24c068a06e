//! Sublinear-query estimation of the longest increasing subsequence (LIS),
//! erasure-resilient monotonicity testing, and adversarial instance
//! generators, all built on a query-counting oracle model and validated
//! against exact polynomial-time oracles.
//!
//! Throughout the crate "LIS" means the longest *nondecreasing* subsequence
//! (ties are legal), and array values are `f64`. Erasures are kept in a mask
//! next to the values so that every real number stays representable.
//!
//! The crate is organized around the access model:
//!
//! * [`oracle`] — erased arrays, the counting [`oracle::QueryOracle`], and
//!   the plain-text instance file format.
//! * [`rng`] — a seeded, platform-stable random source.
//! * [`exact`] — exact LIS / distance-to-monotonicity / deserted-element
//!   oracles used as ground truth everywhere.
//! * [`poset`] — generic finite posets with maximum-antichain and
//!   minimum-chain-cover solvers.
//! * [`instances`] — the hard-instance distributions (block-swap families)
//!   and the index-tree utilities that support them.
//! * [`tester`] — the nonadaptive erasure-resilient monotonicity tester.
//! * [`additive`] — the additive-error LIS estimator parameterized by the
//!   number of distinct values.
//! * [`multiplicative`] — the grid/chain-decomposition estimator with a
//!   multiplicative guarantee and sqrt-type query complexity.

pub mod additive;
pub mod exact;
pub mod instances;
pub mod multiplicative;
pub mod oracle;
pub mod poset;
pub mod report;
pub mod rng;
pub mod tester;

/// Errors produced by constructors and samplers on invalid domain inputs.
///
/// Usage errors (indexing outside an oracle view, restricting to an empty
/// range) are programming bugs and panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed instance file: {0}")]
    MalformedInstance(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
