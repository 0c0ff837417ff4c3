//! Sub-multiset machinery shared by the searches: element bitsets, partial sum
//! sets, bounded-length subsequence selection and atom enumeration.

use crate::abelian::{AbelianGroup, GroupElement, Sequence};

/// Cached addition and negation tables for a group.
#[derive(Debug, Clone)]
pub(crate) struct Arith {
    pub n: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl Arith {
    pub fn new(group: &AbelianGroup) -> Self {
        Arith { n: group.size(), add: group.addition_table(), neg: group.negation_table() }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
}

/// Set of group elements indexed by code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(n: usize) -> Self {
        ElemSet { words: vec![0; n.div_ceil(64)] }
    }

    /// `{0}`.
    pub fn zero(n: usize) -> Self {
        let mut s = Self::new(n);
        s.insert(0);
        s
    }

    #[inline]
    pub fn insert(&mut self, c: u32) {
        self.words[(c / 64) as usize] |= 1 << (c % 64);
    }

    #[inline]
    pub fn contains(&self, c: u32) -> bool {
        self.words[(c / 64) as usize] >> (c % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }

    /// `self u (self + a)`: the update of a partial-sum set (with the empty sum
    /// included) when `a` is appended to the sequence.
    pub fn extend_by(&self, a: u32, ar: &Arith) -> ElemSet {
        let mut out = self.clone();
        for s in self.iter() {
            out.insert(ar.add(s, a));
        }
        out
    }
}

/// Partial sums including the empty sum, `Sigma(S) u {0}`, for a count vector.
pub(crate) fn sums_with_empty(counts: &[u32], ar: &Arith) -> ElemSet {
    let mut set = ElemSet::zero(ar.n);
    for (c, &k) in counts.iter().enumerate() {
        for _ in 0..k {
            let next = set.extend_by(c as u32, ar);
            if next == set {
                break;
            }
            set = next;
        }
    }
    set
}

/// Lexicographically smallest sub-multiset of `s` with exactly `len` elements
/// summing to `target`, under ascending element order.
pub fn find_subsequence(s: &Sequence, len: usize, target: &GroupElement) -> Option<Sequence> {
    let group = s.group();
    let ar = Arith::new(group);
    let items = s.codes();
    let chosen = find_subsequence_codes(&items, len, group.encode(target), &ar)?;
    Some(Sequence::from_codes(group, chosen))
}

pub(crate) fn find_subsequence_codes(
    items: &[u32],
    len: usize,
    target: u32,
    ar: &Arith,
) -> Option<Vec<u32>> {
    let n = items.len();
    if len > n {
        return None;
    }
    // reach[i][l] = sums of l-element selections from items[i..]
    let mut reach: Vec<Vec<ElemSet>> = vec![Vec::new(); n + 1];
    reach[n] = (0..=len).map(|l| if l == 0 { ElemSet::zero(ar.n) } else { ElemSet::new(ar.n) }).collect();
    for i in (0..n).rev() {
        let mut row = reach[i + 1].clone();
        for l in 1..=len {
            for s in reach[i + 1][l - 1].iter() {
                row[l].insert(ar.add(s, items[i]));
            }
        }
        reach[i] = row;
    }
    if !reach[0][len].contains(target) {
        return None;
    }
    let mut chosen = Vec::with_capacity(len);
    let (mut l, mut t) = (len, target);
    for i in 0..n {
        if l == 0 {
            break;
        }
        let rest = ar.add(t, ar.neg(items[i]));
        if reach[i + 1][l - 1].contains(rest) {
            chosen.push(items[i]);
            l -= 1;
            t = rest;
        }
    }
    debug_assert_eq!(l, 0);
    Some(chosen)
}

/// Enumerates zero-sum-free sub-multisets `X` of `avail` (dense counts) with
/// `sigma(X) = target`, passing each as a dense count vector. Zero-sum-freeness
/// is maintained incrementally, so the search never leaves the zero-sum-free
/// region. Stops early when `visit` returns `false`.
pub(crate) fn for_each_zsf_with_sum<F>(avail: &[u32], target: u32, ar: &Arith, visit: &mut F)
where
    F: FnMut(&[u32]) -> bool,
{
    let distinct: Vec<u32> = (0..avail.len() as u32).filter(|&c| c != 0 && avail[c as usize] > 0).collect();
    let mut chosen = vec![0u32; avail.len()];
    let start = ElemSet::zero(ar.n);
    zsf_rec(avail, &distinct, 0, 0, &start, target, ar, &mut chosen, visit);
}

#[allow(clippy::too_many_arguments)]
fn zsf_rec<F>(
    avail: &[u32],
    distinct: &[u32],
    idx: usize,
    sum: u32,
    sums: &ElemSet,
    target: u32,
    ar: &Arith,
    chosen: &mut [u32],
    visit: &mut F,
) -> bool
where
    F: FnMut(&[u32]) -> bool,
{
    if sum == target && !visit(chosen) {
        return false;
    }
    for (j, &c) in distinct.iter().enumerate().skip(idx) {
        let mut local = sums.clone();
        let mut s = sum;
        let mut taken = 0;
        while taken < avail[c as usize] {
            // appending c keeps the set zero-sum free iff -c is not a partial sum
            if local.contains(ar.neg(c)) {
                break;
            }
            local = local.extend_by(c, ar);
            s = ar.add(s, c);
            taken += 1;
            chosen[c as usize] = taken;
            if !zsf_rec(avail, distinct, j + 1, s, &local, target, ar, chosen, visit) {
                chosen[c as usize] = 0;
                return false;
            }
        }
        chosen[c as usize] = 0;
    }
    true
}

/// Minimal zero-sum sub-multisets (atoms) of `counts` that contain `e`.
pub(crate) fn atoms_containing(counts: &[u32], e: u32, ar: &Arith) -> Vec<Vec<u32>> {
    if counts[e as usize] == 0 {
        return Vec::new();
    }
    if e == 0 {
        let mut atom = vec![0; counts.len()];
        atom[0] = 1;
        return vec![atom];
    }
    let mut rest = counts.to_vec();
    rest[e as usize] -= 1;
    let mut out = Vec::new();
    // X e is an atom iff X is zero-sum free with sigma(X) = -e
    for_each_zsf_with_sum(&rest, ar.neg(e), ar, &mut |x| {
        let mut atom = x.to_vec();
        atom[e as usize] += 1;
        out.push(atom);
        true
    });
    out
}

/// All atoms of `counts`.
pub(crate) fn all_atoms(counts: &[u32], ar: &Arith) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut avail = counts.to_vec();
    // each atom is listed once, under its smallest element
    for e in 0..counts.len() as u32 {
        if avail[e as usize] == 0 {
            continue;
        }
        out.extend(atoms_containing(&avail, e, ar));
        avail[e as usize] = 0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_subsequence_prefers_small_codes() {
        let g = AbelianGroup::new(&[3, 3]).unwrap();
        let s = Sequence::from_codes(&g, [3, 3, 3, 1, 1, 1]);
        let x = find_subsequence(&s, 3, &g.zero()).unwrap();
        assert_eq!(x.codes(), vec![1, 1, 1]);
        assert!(find_subsequence(&s, 2, &g.zero()).is_none());
    }

    #[test]
    fn atoms_of_small_sequence() {
        let g = AbelianGroup::cyclic(3).unwrap();
        let ar = Arith::new(&g);
        // 0 1^3 2
        let atoms = all_atoms(&[1, 3, 1], &ar);
        let mut atoms = atoms;
        atoms.sort();
        assert_eq!(atoms, vec![vec![0, 1, 1], vec![0, 3, 0], vec![1, 0, 0]]);
    }
}
