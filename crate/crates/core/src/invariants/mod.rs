//! Polynomial invariants of monomial group actions: Reynolds and relative
//! transfer operators, graded invariant bases, Noether numbers `beta` and
//! `beta_k`, Hilbert-ideal membership and its top degree `b`, polarization,
//! and the rewriting moves used in the upper bound for `H_3`.
//!
//! All linear algebra is exact over `Q(w)`.

mod linalg;
mod ops;
mod rewrite;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::AbelianGroup;
use crate::action::{count_monomials, monomials_of_degree, ActionError, Module, Monomial, Polynomial};
use crate::cyclotomic::Cyclotomic;
use crate::zerosum::{davenport_k_search, SearchBudget, SearchError};

pub use linalg::GradedSubspace;
pub use ops::{
    heisenberg_quotient, polarize, reynolds, trukk_difference, Character, Quotient, QuotientKind,
};
pub use rewrite::{homologous_rewrite, Rewrite};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{what} has {size} monomials, budget is {limit}")]
    BudgetExceeded { what: String, size: u64, limit: u64 },
    #[error("{0}")]
    Precondition(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("search failed: {0}")]
    SearchFailure(String),
}

/// Limits on the size of the graded computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineBudget {
    /// Largest number of monomials in a degree slice the engine will touch.
    pub max_monomials: u64,
}

impl Default for EngineBudget {
    fn default() -> Self {
        EngineBudget { max_monomials: 60_000 }
    }
}

/// One row of a generator-degree table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub d: u32,
    pub dim_inv: usize,
    /// Dimension of the degree-`d` part of `(R_+)^(k+1)`, `R` the invariant ring.
    pub dim_products: usize,
    pub gap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoetherReport {
    pub module: String,
    pub k: u32,
    pub degrees: Vec<DegreeRow>,
    /// Largest degree `<= d_max` with a positive gap.
    pub beta: u32,
    /// A proven upper bound used for certification, when one is known.
    pub bound: Option<u32>,
    /// `d_max` reached `bound`, so `beta` is exact rather than a lower bound.
    pub certified: bool,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub d: u32,
    pub dim_ideal: usize,
    pub dim_space: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertTopReport {
    pub module: String,
    pub degrees: Vec<HilbertRow>,
    /// Largest degree `<= d_max` where the ideal misses some polynomial.
    pub b: Option<u32>,
    /// The ideal was seen to contain every polynomial of some degree
    /// `<= d_max`, hence of all higher degrees too.
    pub exact: bool,
    pub elapsed_ms: u128,
}

type Cache<K> = Mutex<HashMap<K, Arc<GradedSubspace>>>;

/// Graded computations for one module, with memoized slices.
///
/// Caches sit behind mutexes, so one engine can be shared across threads;
/// results never depend on the order in which slices were requested.
pub struct InvariantEngine<'m> {
    module: &'m Module,
    budget: EngineBudget,
    inv: Cache<u32>,
    products: Cache<(u32, u32)>,
    gens: Mutex<HashMap<u32, Arc<Vec<Polynomial>>>>,
    hilbert: Cache<u32>,
}

impl<'m> InvariantEngine<'m> {
    pub fn new(module: &'m Module) -> Self {
        Self::with_budget(module, EngineBudget::default())
    }

    pub fn with_budget(module: &'m Module, budget: EngineBudget) -> Self {
        InvariantEngine {
            module,
            budget,
            inv: Mutex::default(),
            products: Mutex::default(),
            gens: Mutex::default(),
            hilbert: Mutex::default(),
        }
    }

    pub fn module(&self) -> &Module {
        self.module
    }

    fn p(&self) -> u32 {
        self.module.p()
    }

    fn n(&self) -> usize {
        self.module.nvars()
    }

    fn check_budget(&self, what: &str, d: u32) -> Result<(), InvariantError> {
        let size = count_monomials(self.n(), d);
        if size > self.budget.max_monomials {
            return Err(InvariantError::BudgetExceeded {
                what: format!("{what} in degree {d}"),
                size,
                limit: self.budget.max_monomials,
            });
        }
        Ok(())
    }

    /// Basis of `F[V]^G_d`: Reynolds images of one monomial per orbit,
    /// skipping monomials moved by a scalar under some diagonal element (their
    /// average over the diagonal subgroup vanishes).
    pub fn invariant_basis(&self, d: u32) -> Result<Arc<GradedSubspace>, InvariantError> {
        if let Some(s) = self.inv.lock().expect("cache lock").get(&d) {
            return Ok(s.clone());
        }
        self.check_budget("invariant slice", d)?;
        let group = self.module.group();
        let elements = group.elements();
        let diagonal: Vec<_> = elements.iter().filter(|g| g.is_diagonal() && !g.is_identity()).collect();
        let monos = monomials_of_degree(self.n(), d);
        let reps: Vec<&Monomial> = monos
            .par_iter()
            .filter(|m| diagonal.iter().all(|g| g.apply_monomial(m).0 == 0))
            .filter(|m| elements.iter().all(|g| g.apply_monomial(m).1 <= **m))
            .collect();
        let images: Vec<Polynomial> = reps
            .par_iter()
            .map(|m| reynolds(group, &Polynomial::from_monomial(self.p(), (*m).clone())))
            .collect();
        let mut space = GradedSubspace::zero(self.p(), self.n(), d);
        // images of distinct orbits have disjoint supports
        space.extend(images.len(), |i| images[i].clone(), None);
        let space = Arc::new(space);
        self.inv.lock().expect("cache lock").insert(d, space.clone());
        Ok(space)
    }

    /// Degree-`d` part of `(R_+)^j` for the invariant ring `R`:
    /// `P_1 = R_d` and `P_j(d) = sum_e gens_e * P_{j-1}(d - e)`, using that
    /// `R_+` is generated as an ideal of `R` by algebra generators.
    pub fn product_slice(&self, j: u32, d: u32) -> Result<Arc<GradedSubspace>, InvariantError> {
        if j == 0 {
            return Err(InvariantError::Precondition("products of at least one invariant".into()));
        }
        if j == 1 {
            return self.invariant_basis(d);
        }
        if let Some(s) = self.products.lock().expect("cache lock").get(&(j, d)) {
            return Ok(s.clone());
        }
        let target = self.invariant_basis(d)?.dim();
        let mut space = GradedSubspace::zero(self.p(), self.n(), d);
        if d >= j && target > 0 {
            let mut pairs: Vec<(Arc<Vec<Polynomial>>, Vec<Polynomial>)> = Vec::new();
            for e in 1..=d - (j - 1) {
                let gens = self.generators(e)?;
                if gens.is_empty() {
                    continue;
                }
                let lower = self.product_slice(j - 1, d - e)?;
                if lower.dim() == 0 {
                    continue;
                }
                pairs.push((gens, lower.basis()));
            }
            let mut index = Vec::new();
            for (b, (gens, lower)) in pairs.iter().enumerate() {
                for g in 0..gens.len() {
                    for h in 0..lower.len() {
                        index.push((b, g, h));
                    }
                }
            }
            space.extend(
                index.len(),
                |i| {
                    let (b, g, h) = index[i];
                    pairs[b].0[g].mul(&pairs[b].1[h])
                },
                Some(target),
            );
        }
        let space = Arc::new(space);
        self.products.lock().expect("cache lock").insert((j, d), space.clone());
        Ok(space)
    }

    /// Invariants of degree `e` completing `P_2(e)` to `R_e`: a minimal set of
    /// algebra generators in that degree.
    pub fn generators(&self, e: u32) -> Result<Arc<Vec<Polynomial>>, InvariantError> {
        if let Some(g) = self.gens.lock().expect("cache lock").get(&e) {
            return Ok(g.clone());
        }
        let inv = self.invariant_basis(e)?;
        let mut gens = Vec::new();
        if e > 0 {
            let mut span = (*self.product_slice(2, e)?).clone();
            for f in inv.basis() {
                if span.insert(&f) {
                    gens.push(f);
                }
            }
        }
        let gens = Arc::new(gens);
        self.gens.lock().expect("cache lock").insert(e, gens.clone());
        Ok(gens)
    }

    /// `beta_k(G, V)` swept up to `d_max`. `k = 1` is the Noether number.
    pub fn noether_k(&self, k: u32, d_max: u32) -> Result<NoetherReport, InvariantError> {
        if k == 0 {
            return Err(InvariantError::Precondition("k must be at least 1".into()));
        }
        let start = Instant::now();
        self.check_budget("sweep", d_max)?;
        let mut degrees = Vec::new();
        for d in 1..=d_max {
            let dim_inv = self.invariant_basis(d)?.dim();
            let dim_products = self.product_slice(k + 1, d)?.dim();
            degrees.push(DegreeRow { d, dim_inv, dim_products, gap: dim_inv - dim_products });
        }
        let beta = degrees.iter().filter(|r| r.gap > 0).map(|r| r.d).max().unwrap_or(0);
        let bound = self.known_bound(k)?;
        Ok(NoetherReport {
            module: self.module.label(),
            k,
            degrees,
            beta,
            bound,
            certified: bound.is_some_and(|b| d_max >= b),
            elapsed_ms: start.elapsed().as_millis(),
        })
    }

    pub fn noether_number(&self, d_max: u32) -> Result<NoetherReport, InvariantError> {
        self.noether_k(1, d_max)
    }

    /// Proven upper bounds: `beta(H_p) <= p^2 + p - 1`, and
    /// `beta_k(A) = D_k(A)` for an abelian group acting diagonally.
    fn known_bound(&self, k: u32) -> Result<Option<u32>, InvariantError> {
        if self.module.is_heisenberg() && k == 1 {
            let p = self.p();
            return Ok(Some(p * p + p - 1));
        }
        match diagonal_image(self.module) {
            Some(a) => Ok(Some(davenport_k_search(&a, k, &SearchBudget::default())?.value)),
            None => Ok(None),
        }
    }

    /// Degree-`d` slice of the Hilbert ideal `F[V]^G_+ F[V]`, built as
    /// `I_d = R_d + sum_v x_v I_(d-1)`.
    pub fn hilbert_slice(&self, d: u32) -> Result<Arc<GradedSubspace>, InvariantError> {
        if let Some(s) = self.hilbert.lock().expect("cache lock").get(&d) {
            return Ok(s.clone());
        }
        let space = if d == 0 {
            GradedSubspace::zero(self.p(), self.n(), 0)
        } else {
            let prev = self.hilbert_slice(d - 1)?;
            if prev.is_full() && d > 1 {
                GradedSubspace::full(self.p(), self.n(), d)
            } else {
                self.check_budget("Hilbert ideal slice", d)?;
                let inv = self.invariant_basis(d)?.basis();
                let n = self.n();
                let rows = prev.rows();
                let mut space = GradedSubspace::zero(self.p(), n, d);
                space.extend(
                    inv.len() + n * rows.len(),
                    |i| {
                        if i < inv.len() {
                            inv[i].clone()
                        } else {
                            let i = i - inv.len();
                            rows[i / n].mul_monomial(&Monomial::var(n, i % n))
                        }
                    },
                    None,
                );
                space
            }
        };
        let space = Arc::new(space);
        self.hilbert.lock().expect("cache lock").insert(d, space.clone());
        Ok(space)
    }

    /// Exact membership of a homogeneous polynomial in the Hilbert ideal.
    pub fn in_hilbert_ideal(&self, f: &Polynomial) -> Result<bool, InvariantError> {
        if f.is_zero() {
            return Ok(true);
        }
        let d = f.homogeneous_degree().ok_or(InvariantError::NotHomogeneous)?;
        Ok(self.hilbert_slice(d)?.contains(f))
    }

    /// `b(G, V)`: the top degree of `F[V] / F[V]^G_+ F[V]`, searched up to `d_max`.
    pub fn top_degree_coinvariants(&self, d_max: u32) -> Result<HilbertTopReport, InvariantError> {
        let start = Instant::now();
        let mut degrees = Vec::new();
        let mut exact = false;
        for d in 0..=d_max {
            let s = self.hilbert_slice(d)?;
            degrees.push(HilbertRow { d, dim_ideal: s.dim(), dim_space: s.ambient_dim() });
            if s.is_full() {
                exact = true;
                break;
            }
        }
        let b = degrees.iter().filter(|r| r.dim_ideal as u64 != r.dim_space).map(|r| r.d).max();
        Ok(HilbertTopReport { module: self.module.label(), degrees, b, exact, elapsed_ms: start.elapsed().as_millis() })
    }
}

/// The acting group as an abstract elementary abelian group, when every
/// element is diagonal of order dividing `p`.
pub fn diagonal_image(module: &Module) -> Option<AbelianGroup> {
    let group = module.group();
    let p = group.conductor();
    let all_diag = group.elements().iter().all(|g| g.is_diagonal() && g.pow(p).is_identity());
    if !all_diag {
        return None;
    }
    let mut order = group.order();
    let mut rank = 0;
    while order > 1 {
        if order % p as usize != 0 {
            return None;
        }
        order /= p as usize;
        rank += 1;
    }
    AbelianGroup::elementary(p, rank).ok()
}

/// `1/n` in `Q(w)`.
pub(crate) fn reciprocal(p: u32, n: usize) -> Cyclotomic {
    Cyclotomic::from_integer(p, n as i64).and_then(|c| c.inverse()).expect("n > 0 and p prime")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{build_module, DEFAULT_GROUP_BUDGET};

    fn module(s: &str) -> Module {
        build_module(&s.parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap()
    }

    #[test]
    fn invariant_dimensions_v_omega() {
        let m = module("p=3;V=[1:1]");
        let e = InvariantEngine::new(&m);
        assert_eq!(e.invariant_basis(1).unwrap().dim(), 0);
        assert_eq!(e.invariant_basis(3).unwrap().dim(), 2);
        assert_eq!(e.generators(3).unwrap().len(), 2);
    }

    #[test]
    fn trivial_group_gives_everything() {
        let m = module("p=3;U=[(0,0),(0,0)];V=[]");
        let e = InvariantEngine::new(&m);
        assert_eq!(m.group().order(), 1);
        assert_eq!(e.invariant_basis(4).unwrap().dim(), 5);
        let r = e.noether_number(4).unwrap();
        assert_eq!(r.beta, 1);
    }

    #[test]
    fn cyclic_noether_numbers() {
        let m = module("p=3;r=1;X=[(1)]");
        let e = InvariantEngine::new(&m);
        let r = e.noether_number(4).unwrap();
        assert_eq!(r.beta, 3);
        assert_eq!(r.bound, Some(3));
        assert!(r.certified);
        assert_eq!(e.noether_k(2, 7).unwrap().beta, 6);
    }

    #[test]
    fn hilbert_ideal_small() {
        let m = module("p=3;V=[1:1]");
        let e = InvariantEngine::new(&m);
        assert_eq!(e.hilbert_slice(2).unwrap().dim(), 0);
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        let x2yz = m.poly(m.monomial(&[(x, 2), (y, 1), (z, 1)]));
        assert!(e.in_hilbert_ideal(&x2yz).unwrap());
        let mixed = m.poly(m.monomial(&[(x, 1)])).add(&x2yz);
        assert_eq!(e.in_hilbert_ideal(&mixed), Err(InvariantError::NotHomogeneous));
    }
}
