use std::collections::HashMap;

use super::subsets::{atoms_containing, find_subsequence_codes, Arith};
use super::{Factorization, SearchError};
use crate::abelian::Sequence;

/// Memoized maximum packing of disjoint non-empty zero-sum subsequences.
///
/// The smallest element `e` still present is either left unused or lies in an
/// atom (minimal zero-sum subsequence) containing it; both branches are
/// explored. `cap` stops the search as soon as that many factors are found.
struct Packer<'a> {
    ar: &'a Arith,
    cap: u32,
    memo: HashMap<Vec<u32>, (u32, Option<Vec<u32>>)>,
}

impl Packer<'_> {
    fn best(&mut self, counts: &[u32]) -> u32 {
        if let Some(&(v, _)) = self.memo.get(counts) {
            return v;
        }
        let Some(e) = counts.iter().position(|&k| k > 0) else {
            return 0;
        };
        let total: u32 = counts.iter().sum();
        // zeros are atoms of length 1, every other atom has length >= 2
        let upper = counts[0] + (total - counts[0]) / 2;
        let mut atoms = atoms_containing(counts, e as u32, self.ar);
        atoms.sort_by_key(|a| (a.iter().sum::<u32>(), std::cmp::Reverse(a.clone())));
        let mut best = 0;
        let mut choice = None;
        let mut rest = counts.to_vec();
        for atom in atoms {
            for (r, a) in rest.iter_mut().zip(&atom) {
                *r -= a;
            }
            let v = 1 + self.best(&rest);
            rest.copy_from_slice(counts);
            if v > best {
                best = v;
                choice = Some(atom);
                if best >= self.cap.min(upper) {
                    break;
                }
            }
        }
        if best < self.cap.min(upper) {
            rest[e] -= 1;
            let v = self.best(&rest);
            if v > best {
                best = v;
                choice = None;
            }
        }
        self.memo.insert(counts.to_vec(), (best, choice));
        best
    }

    fn reconstruct(&self, counts: &[u32]) -> (Vec<Vec<u32>>, Vec<u32>) {
        let mut factors = Vec::new();
        let mut remainder = vec![0; counts.len()];
        let mut cur = counts.to_vec();
        while let Some(e) = cur.iter().position(|&k| k > 0) {
            match self.memo.get(&cur) {
                Some((v, Some(atom))) if *v > 0 => {
                    for (r, a) in cur.iter_mut().zip(atom) {
                        *r -= a;
                    }
                    factors.push(atom.clone());
                    if factors.len() as u32 >= self.cap {
                        break;
                    }
                }
                _ => {
                    cur[e] -= 1;
                    remainder[e] += 1;
                }
            }
        }
        for (r, c) in remainder.iter_mut().zip(&cur) {
            *r += c;
        }
        (factors, remainder)
    }
}

fn pack(s: &Sequence, cap: u32) -> Factorization {
    let group = s.group();
    let ar = Arith::new(group);
    let counts = s.count_vector();
    let mut packer = Packer { ar: &ar, cap, memo: HashMap::new() };
    packer.best(&counts);
    let (factors, remainder) = packer.reconstruct(&counts);
    Factorization {
        factors: factors.iter().map(|f| Sequence::from_count_vector(group, f)).collect(),
        remainder: Sequence::from_count_vector(group, &remainder),
    }
}

/// Largest number of pairwise disjoint non-empty zero-sum subsequences of `s`,
/// capped at `cap`.
pub fn max_disjoint_zero_sums(s: &Sequence, cap: u32) -> u32 {
    pack(s, cap).len() as u32
}

/// A factorization with the maximum number `l(S)` of non-empty zero-sum
/// factors. The remainder is zero-sum free.
pub fn max_factorization(s: &Sequence) -> Factorization {
    pack(s, u32::MAX)
}

/// Shortest non-empty zero-sum subsequence (lexicographically smallest among
/// those), if any.
pub fn shortest_zero_sum(s: &Sequence) -> Option<Sequence> {
    let ar = Arith::new(s.group());
    let items = s.codes();
    (1..=items.len()).find_map(|len| {
        find_subsequence_codes(&items, len, 0, &ar).map(|c| Sequence::from_codes(s.group(), c))
    })
}

/// `S = S_1 ... S_k * R` with exactly `k` non-empty zero-sum factors.
///
/// Shortest zero-sum subsequences are extracted greedily; if that runs dry
/// before `k` factors an exact packing search decides feasibility.
pub fn factor_k(s: &Sequence, k: u32) -> Result<Factorization, SearchError> {
    let mut factors = Vec::with_capacity(k as usize);
    let mut rest = s.clone();
    while (factors.len() as u32) < k {
        match shortest_zero_sum(&rest) {
            Some(z) => {
                rest = rest.remove(&z)?;
                factors.push(z);
            }
            None => break,
        }
    }
    let result = if factors.len() as u32 == k {
        Factorization { factors, remainder: rest }
    } else {
        let exact = pack(s, k);
        if (exact.len() as u32) < k {
            return Err(SearchError::Infeasible(format!(
                "{s} has at most {} disjoint non-empty zero-sum subsequences, {k} requested",
                exact.len()
            )));
        }
        exact
    };
    if !result.is_valid_for(s) || result.len() as u32 != k {
        return Err(SearchError::Internal(format!("factor_k produced an invalid factorization of {s}")));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;

    fn c3() -> AbelianGroup {
        AbelianGroup::cyclic(3).unwrap()
    }

    #[test]
    fn max_factorization_examples() {
        let g = c3();
        let zeros = Sequence::from_codes(&g, [0, 0, 0, 0]);
        let f = max_factorization(&zeros);
        assert_eq!(f.len(), 4);
        assert!(f.remainder.is_empty());

        let ones = Sequence::from_codes(&g, [1, 1, 1]);
        let f = max_factorization(&ones);
        assert_eq!(f.len(), 1);
        assert_eq!(f.factors[0], ones);
        assert!(f.remainder.is_empty());

        let s = Sequence::from_codes(&g, [1, 1, 1, 1, 1, 2, 2]);
        let f = max_factorization(&s);
        assert_eq!(f.len(), 3);
        assert!(f.is_valid_for(&s));
        assert!(max_factorization(&Sequence::empty(&g)).is_empty());
    }

    #[test]
    fn factor_k_examples() {
        let g = c3();
        let f = factor_k(&Sequence::from_codes(&g, [0, 0, 0]), 3).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.remainder.is_empty());

        let g2 = AbelianGroup::new(&[3, 3]).unwrap();
        let a = g2.encode(&g2.element(&[1, 0]).unwrap());
        let b = g2.encode(&g2.element(&[0, 1]).unwrap());
        let s = Sequence::from_codes(&g2, [a, a, a, b, b, b]);
        let f = factor_k(&s, 1).unwrap();
        assert!(f.is_valid_for(&s));
        assert_eq!(f.len(), 1);

        assert!(matches!(
            factor_k(&Sequence::from_codes(&g, [1, 1]), 1),
            Err(SearchError::Infeasible(_))
        ));
    }
}
