use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::action::{count_monomials, monomials_of_degree, Monomial, Polynomial};
use crate::cyclotomic::Cyclotomic;

/// Candidates reduced per parallel batch when extending a subspace.
const BATCH: usize = 512;

/// A subspace of the homogeneous polynomials of one degree, kept in echelon
/// form: every basis row has leading coefficient 1, leading monomials are
/// pairwise distinct and no row contains another row's leading monomial
/// added after it. Membership is exact reduction to zero.
///
/// Once the subspace fills the whole degree slice it switches to a compact
/// "full" representation without stored rows.
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    p: u32,
    nvars: usize,
    degree: u32,
    rows: Vec<Polynomial>,
    pivots: HashMap<Monomial, usize>,
    full: bool,
}

impl GradedSubspace {
    pub fn zero(p: u32, nvars: usize, degree: u32) -> Self {
        GradedSubspace { p, nvars, degree, rows: Vec::new(), pivots: HashMap::new(), full: false }
    }

    pub fn full(p: u32, nvars: usize, degree: u32) -> Self {
        GradedSubspace { full: true, ..Self::zero(p, nvars, degree) }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension of the ambient slice of degree-`d` polynomials.
    pub fn ambient_dim(&self) -> u64 {
        count_monomials(self.nvars, self.degree)
    }

    pub fn dim(&self) -> usize {
        if self.full {
            self.ambient_dim() as usize
        } else {
            self.rows.len()
        }
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Stored echelon rows (empty for a full subspace).
    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    /// A basis; monomials for a full subspace.
    pub fn basis(&self) -> Vec<Polynomial> {
        if self.full {
            monomials_of_degree(self.nvars, self.degree)
                .into_iter()
                .map(|m| Polynomial::from_monomial(self.p, m))
                .collect()
        } else {
            self.rows.clone()
        }
    }

    /// Remainder of `f` after eliminating every pivot monomial.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.full {
            return Polynomial::zero(self.p, self.nvars);
        }
        let mut work: BTreeMap<Monomial, Cyclotomic> = f.terms().clone();
        let mut out = BTreeMap::new();
        while let Some((m, c)) = work.pop_last() {
            let Some(&r) = self.pivots.get(&m) else {
                out.insert(m, c);
                continue;
            };
            // the row's other terms are all smaller than m
            for (mm, a) in self.rows[r].terms().iter().rev().skip(1) {
                let delta = &c * a;
                match work.entry(mm.clone()) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Polynomial::from_map(self.p, self.nvars, out)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.full || self.reduce(f).is_zero()
    }

    /// Adds `f` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Polynomial) -> bool {
        if self.full {
            return false;
        }
        let r = self.reduce(f);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: Polynomial) -> bool {
        let Some((lead, c)) = r.leading() else {
            return false;
        };
        debug_assert_eq!(lead.degree(), self.degree, "inhomogeneous row");
        let lead = lead.clone();
        let inv = c.inverse().expect("leading coefficient is nonzero");
        let row = r.scale(&inv);
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        if self.rows.len() as u64 == self.ambient_dim() {
            *self = Self::full(self.p, self.nvars, self.degree);
        }
        true
    }

    /// Inserts candidates in order, reducing each batch in parallel against
    /// the current rows first. Stops once the dimension reaches `stop_at`.
    /// The resulting span does not depend on the thread count.
    pub fn extend<F>(&mut self, count: usize, candidate: F, stop_at: Option<usize>)
    where
        F: Fn(usize) -> Polynomial + Sync,
    {
        let mut start = 0;
        while start < count && !self.full && stop_at.is_none_or(|t| self.dim() < t) {
            let end = (start + BATCH).min(count);
            let reduced: Vec<Polynomial> = (start..end)
                .into_par_iter()
                .map(|i| self.reduce(&candidate(i)))
                .filter(|r| !r.is_zero())
                .collect();
            for r in reduced {
                // already reduced against the rows present when the batch began
                let r = self.reduce(&r);
                self.push_reduced(r);
                if self.full || stop_at.is_some_and(|t| self.dim() >= t) {
                    return;
                }
            }
            start = end;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u16]) -> Polynomial {
        Polynomial::from_monomial(3, Monomial::from_exponents(e.to_vec()))
    }

    #[test]
    fn echelon_membership() {
        let mut s = GradedSubspace::zero(3, 2, 2);
        assert!(s.insert(&mono(&[2, 0]).add(&mono(&[1, 1]))));
        assert!(!s.insert(&mono(&[2, 0]).add(&mono(&[1, 1])).scale(&Cyclotomic::root_of_unity(3, 1).unwrap())));
        assert!(s.insert(&mono(&[1, 1])));
        assert!(s.contains(&mono(&[2, 0])));
        assert!(!s.contains(&mono(&[0, 2])));
        assert_eq!(s.dim(), 2);
        assert!(s.insert(&mono(&[0, 2])));
        assert!(s.is_full());
        assert_eq!(s.dim(), 3);
        assert_eq!(s.basis().len(), 3);
    }

    #[test]
    fn parallel_extend_matches_sequential() {
        let monos = monomials_of_degree(3, 3);
        let cand = |i: usize| mono(monos[i].exponents()).add(&mono(monos[(i + 1) % monos.len()].exponents()));
        let mut a = GradedSubspace::zero(3, 3, 3);
        a.extend(monos.len(), cand, None);
        let mut b = GradedSubspace::zero(3, 3, 3);
        for i in 0..monos.len() {
            b.insert(&cand(i));
        }
        assert_eq!(a.dim(), b.dim());
        assert!(b.basis().iter().all(|f| a.contains(f)));
    }
}
