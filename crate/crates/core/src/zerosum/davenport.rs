use rayon::prelude::*;
use serde::Serialize;

use super::subsets::{all_atoms, sums_with_empty, Arith, ElemSet};
use super::symmetry::{automorphisms, canonical};
use super::{require_prime, SearchBudget, SearchError};
use crate::abelian::{AbelianGroup, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DavenportResult {
    pub value: u32,
    /// A longest sequence without `k` disjoint non-empty zero-sum
    /// subsequences; it has length `value - 1`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub witness: Sequence,
}

impl DavenportResult {
    /// The witness completed to a zero-sum sequence of length `value` that
    /// admits no factorization into `k + 1` non-empty zero-sum parts.
    pub fn zero_sum_witness(&self) -> Sequence {
        let g = self.witness.group();
        let closing = g.neg(&self.witness.sigma());
        self.witness
            .concat(&Sequence::power(g, &closing, 1).expect("element of g"))
            .expect("same group")
    }
}

/// `D(A)` with the default budget.
pub fn davenport(group: &AbelianGroup) -> Result<u32, SearchError> {
    davenport_search(group, &SearchBudget::default()).map(|r| r.value)
}

/// `D(A) = 1 + max |T|` over zero-sum-free `T`, by depth-first enumeration of
/// multisets in non-decreasing element order. The partial-sum set (with the
/// empty sum) is carried along; appending `a` keeps `T` zero-sum free iff `-a`
/// is not in it.
pub fn davenport_search(group: &AbelianGroup, budget: &SearchBudget) -> Result<DavenportResult, SearchError> {
    budget.check_group(group)?;
    let ar = Arith::new(group);
    let mut best: Vec<u32> = Vec::new();
    let mut path = Vec::new();
    zsf_dfs(&ar, 1, &ElemSet::zero(ar.n), &mut path, &mut best);
    Ok(DavenportResult {
        value: best.len() as u32 + 1,
        witness: Sequence::from_codes(group, best),
    })
}

fn zsf_dfs(ar: &Arith, start: u32, sums: &ElemSet, path: &mut Vec<u32>, best: &mut Vec<u32>) {
    if path.len() > best.len() {
        best.clone_from(path);
    }
    for a in start..ar.n as u32 {
        if sums.contains(ar.neg(a)) {
            continue;
        }
        let next = sums.extend_by(a, ar);
        path.push(a);
        zsf_dfs(ar, a, &next, path, best);
        path.pop();
    }
}

/// `D_k(A)` with the default budget.
pub fn davenport_k(group: &AbelianGroup, k: u32) -> Result<u32, SearchError> {
    davenport_k_search(group, k, &SearchBudget::default()).map(|r| r.value)
}

/// `D_k(A)`: the longest zero-sum sequence with no factorization into `k + 1`
/// non-empty zero-sum parts. Equivalently `1 + max |T|` over sequences `T`
/// without `k` disjoint non-empty zero-sum subsequences; that property is
/// inherited by subsequences, so `T` is grown one element at a time.
///
/// The search runs level by level over multisets, keeping one representative
/// per automorphism orbit. For a representative `T`, appending `a` creates
/// `k` disjoint zero-sums iff `-a` is a (possibly empty) partial sum of `T / W`
/// for some `W | T` made of `k - 1` disjoint atoms.
pub fn davenport_k_search(
    group: &AbelianGroup,
    k: u32,
    budget: &SearchBudget,
) -> Result<DavenportResult, SearchError> {
    if k == 0 {
        return Err(SearchError::Precondition("k must be at least 1".into()));
    }
    budget.check_group(group)?;
    let ar = Arith::new(group);
    let auts = automorphisms(group);
    let mut level: Vec<Vec<u8>> = vec![vec![0u8; ar.n]];
    let mut length = 0usize;
    loop {
        let mut next: Vec<Vec<u8>> = level
            .par_iter()
            .flat_map_iter(|t| {
                let mut scratch = Vec::new();
                extensions(t, k, &ar)
                    .into_iter()
                    .map(|child| canonical(&child, &auts, &mut scratch))
                    .collect::<Vec<_>>()
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        if next.len() > budget.max_level_states {
            return Err(SearchError::BudgetExceeded {
                what: "multiset orbits on one level",
                size: next.len(),
                limit: budget.max_level_states,
            });
        }
        if length >= u8::MAX as usize - 1 {
            return Err(SearchError::BudgetExceeded {
                what: "sequence length",
                size: length + 1,
                limit: u8::MAX as usize - 1,
            });
        }
        level = next;
        length += 1;
    }
    let witness = level.iter().min().expect("level is never empty");
    let counts: Vec<u32> = witness.iter().map(|&c| c as u32).collect();
    Ok(DavenportResult {
        value: length as u32 + 1,
        witness: Sequence::from_count_vector(group, &counts),
    })
}

/// Children `T a` that still lack `k` disjoint non-empty zero-sum subsequences.
fn extensions(t: &[u8], k: u32, ar: &Arith) -> Vec<Vec<u8>> {
    let counts: Vec<u32> = t.iter().map(|&c| c as u32).collect();
    let mut bad = ElemSet::new(ar.n);
    let mut mark = |rest: &[u32]| {
        for s in sums_with_empty(rest, ar).iter() {
            bad.insert(ar.neg(s));
        }
    };
    if k == 1 {
        mark(&counts);
    } else {
        let atoms = all_atoms(&counts, ar);
        let mut rest = counts.clone();
        disjoint_unions(&atoms, 0, k - 1, &mut rest, &mut mark);
    }
    (0..ar.n)
        .filter(|&a| !bad.contains(a as u32))
        .map(|a| {
            let mut child = t.to_vec();
            child[a] += 1;
            child
        })
        .collect()
}

/// Calls `f(T / W)` for every union `W` of `need` disjoint atoms (chosen with
/// non-decreasing index, repeats allowed when multiplicities permit).
fn disjoint_unions<F: FnMut(&[u32])>(
    atoms: &[Vec<u32>],
    from: usize,
    need: u32,
    rest: &mut Vec<u32>,
    f: &mut F,
) {
    if need == 0 {
        f(rest);
        return;
    }
    for (i, atom) in atoms.iter().enumerate().skip(from) {
        if atom.iter().zip(rest.iter()).all(|(a, r)| a <= r) {
            for (r, a) in rest.iter_mut().zip(atom) {
                *r -= a;
            }
            disjoint_unions(atoms, i, need - 1, rest, f);
            for (r, a) in rest.iter_mut().zip(atom) {
                *r += a;
            }
        }
    }
}

/// `D(C_{p^n_1} x ... x C_{p^n_r}) = sum (p^n_i - 1) + 1`.
pub fn olson_formula(p: u64, exponents: &[u32]) -> Result<u64, SearchError> {
    require_prime(p)?;
    if exponents.contains(&0) {
        return Err(SearchError::Precondition("exponents must be at least 1".into()));
    }
    Ok(exponents.iter().map(|&n| p.pow(n) - 1).sum::<u64>() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(orders: &[u32]) -> AbelianGroup {
        AbelianGroup::new(orders).unwrap()
    }

    #[test]
    fn small_davenport_values() {
        assert_eq!(davenport(&AbelianGroup::trivial()).unwrap(), 1);
        assert_eq!(davenport(&c(&[3, 3])).unwrap(), 5);
        assert_eq!(davenport(&c(&[2, 2, 2])).unwrap(), 4);
        assert_eq!(davenport(&c(&[6])).unwrap(), 6);
    }

    #[test]
    fn witness_is_zero_sum_free() {
        let r = davenport_search(&c(&[2, 4]), &SearchBudget::default()).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.witness.len(), 4);
        assert!(r.witness.is_zero_sum_free());
        let atom = r.zero_sum_witness();
        assert!(atom.is_zero_sum());
        assert_eq!(atom.len(), 5);
    }

    #[test]
    fn budget_is_enforced() {
        let budget = SearchBudget { max_group_size: 8, ..SearchBudget::default() };
        assert!(matches!(
            davenport_search(&c(&[3, 3]), &budget),
            Err(SearchError::BudgetExceeded { size: 9, limit: 8, .. })
        ));
    }

    #[test]
    fn olson_examples() {
        assert_eq!(olson_formula(3, &[1, 1]).unwrap(), 5);
        assert_eq!(olson_formula(3, &[1, 1, 1]).unwrap(), 7);
        assert_eq!(olson_formula(2, &[1, 1, 1]).unwrap(), 4);
        assert_eq!(olson_formula(6, &[1]), Err(SearchError::NotPrime(6)));
    }

    #[test]
    fn davenport_k_small() {
        let g = c(&[3, 3]);
        assert_eq!(davenport_k(&g, 1).unwrap(), 5);
        assert_eq!(davenport_k(&g, 2).unwrap(), 8);
        assert_eq!(davenport_k(&c(&[3]), 2).unwrap(), 6);
        assert_eq!(davenport_k(&AbelianGroup::trivial(), 3).unwrap(), 3);
    }
}
