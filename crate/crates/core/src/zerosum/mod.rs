//! Davenport-type constants by exhaustive search, and constructive versions of
//! the zero-sum factorization lemmas over `C_p` and `C_p x C_p`.

mod davenport;
mod factor;
mod lemmas;
mod subsets;
mod symmetry;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupError, Sequence};

pub use davenport::{davenport, davenport_k, davenport_k_search, davenport_search, olson_formula, DavenportResult};
pub use factor::{factor_k, max_disjoint_zero_sums, max_factorization, shortest_zero_sum};
pub use lemmas::{
    cd_check, classify_maximal_zsf, find_short_zero_sum, nullak_factor, separ_factor, CdReport,
    SeparFactorization,
};
pub use subsets::find_subsequence;
pub use symmetry::automorphisms;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exceeded: {what} is {size}, limit {limit}")]
    BudgetExceeded { what: &'static str, size: usize, limit: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no factorization exists: {0}")]
    Infeasible(String),
    #[error("internal search failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Size caps for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Largest `|A|` accepted by the Davenport searches.
    pub max_group_size: usize,
    /// Largest prime accepted by `classify_maximal_zsf`.
    pub max_classify_prime: u32,
    /// Largest number of multiset orbits kept on one level of the `D_k` search.
    pub max_level_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_group_size: 64, max_classify_prime: 7, max_level_states: 20_000_000 }
    }
}

impl SearchBudget {
    fn check_group(&self, group: &AbelianGroup) -> Result<(), SearchError> {
        if group.size() > self.max_group_size {
            return Err(SearchError::BudgetExceeded {
                what: "group size",
                size: group.size(),
                limit: self.max_group_size,
            });
        }
        Ok(())
    }
}

/// `S = S_1 ... S_l * R` with every `S_i` a non-empty zero-sum sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Sequence>,
    pub remainder: Sequence,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Concatenation of all factors and the remainder.
    pub fn product(&self) -> Sequence {
        self.factors
            .iter()
            .fold(self.remainder.clone(), |acc, f| acc.concat(f).expect("same group"))
    }

    /// Checks that the factorization multiplies out to `s` and every factor is
    /// a non-empty zero-sum sequence.
    pub fn is_valid_for(&self, s: &Sequence) -> bool {
        self.factors.iter().all(|f| !f.is_empty() && f.is_zero_sum()) && &self.product() == s
    }
}

pub(crate) fn require_prime(p: u64) -> Result<(), SearchError> {
    if crate::is_prime(p) {
        Ok(())
    } else {
        Err(SearchError::NotPrime(p))
    }
}

/// Returns `p` when `group` is `C_p` with `p` prime.
pub(crate) fn cyclic_prime(group: &AbelianGroup) -> Result<u32, SearchError> {
    match group.orders() {
        [p] if crate::is_prime(*p as u64) => Ok(*p),
        _ => Err(SearchError::Precondition(format!("expected C_p with p prime, got C({group})"))),
    }
}

/// Returns `p` when `group` is `C_p x C_p` with `p` prime.
pub(crate) fn square_prime(group: &AbelianGroup) -> Result<u32, SearchError> {
    match group.orders() {
        [p, q] if p == q && crate::is_prime(*p as u64) => Ok(*p),
        _ => Err(SearchError::Precondition(format!(
            "expected C_p x C_p with p prime, got C({group})"
        ))),
    }
}
