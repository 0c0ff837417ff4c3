//! Exact verification engine for zero-sum sequence combinatorics over finite
//! abelian groups and for polynomial invariants of monomial group actions,
//! centred on the Heisenberg group of order `p^3`.
//!
//! The crate is organized bottom-up:
//!
//! - [`abelian`]: finite abelian groups, elements and sequences (multisets).
//! - [`zerosum`]: Davenport constants by search and constructive zero-sum
//!   factorization procedures.
//! - [`cyclotomic`]: exact arithmetic in `Q(w)`, `w` a primitive p-th root of unity.
//! - [`action`]: monomial (generalized permutation) group actions, the
//!   Heisenberg modules, polynomials and weights.
//! - [`invariants`]: Reynolds and transfer operators, graded invariant bases,
//!   Noether numbers, Hilbert-ideal membership, polarization and the
//!   homologous rewriting procedure.
//! - [`verify`]: the verification suite and its report format.

pub mod abelian;
pub mod action;
pub mod cyclotomic;
pub mod invariants;
pub mod parse;
pub mod report;
pub mod verify;
pub mod zerosum;

pub use abelian::{AbelianGroup, GroupElement, Sequence};
pub use cyclotomic::Cyclotomic;

/// Trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
