//! Finite abelian groups written as products of cyclic factors, and sequences
//! (finite multisets) over them.
//!
//! Elements carry a canonical mixed-radix encoding with the first factor most
//! significant, so ordering elements by code agrees with lexicographic order
//! on coordinates. Sequences are sorted association lists keyed by that code.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor of order 0 is not allowed")]
    ZeroOrder,
    #[error("group of size {size} exceeds the supported size {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("element {coords:?} does not belong to C({orders:?})")]
    BadElement { coords: Vec<u32>, orders: Vec<u32> },
    #[error("sequences live over different groups")]
    GroupMismatch,
    #[error("{0} does not divide the sequence")]
    NotDivisor(String),
}

/// Upper limit on `|A|`; element codes are stored as `u32`.
pub const MAX_GROUP_SIZE: u64 = 1 << 24;

/// `C_{n_1} x ... x C_{n_r}`, with factors of order 1 dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: &[u32]) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::ZeroOrder);
        }
        let orders: Vec<u32> = orders.iter().copied().filter(|&n| n > 1).collect();
        let size = orders.iter().map(|&n| n as u64).product::<u64>();
        if size > MAX_GROUP_SIZE {
            return Err(GroupError::TooLarge { size, limit: MAX_GROUP_SIZE });
        }
        Ok(AbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        Self::new(&[n])
    }

    /// `C_p^rank`.
    pub fn elementary(p: u32, rank: usize) -> Result<Self, GroupError> {
        Self::new(&vec![p; rank])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u32 {
        self.orders
            .iter()
            .fold(1u32, |acc, &n| num_integer::lcm(acc, n))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.orders.len()] }
    }

    pub fn element(&self, coords: &[u32]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.orders.len()
            || coords.iter().zip(&self.orders).any(|(&c, &n)| c >= n)
        {
            return Err(GroupError::BadElement {
                coords: coords.to_vec(),
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement { coords: coords.to_vec() })
    }

    /// Reduces arbitrary integer coordinates modulo the factor orders.
    pub fn element_mod(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.orders.len() {
            return Err(GroupError::BadElement {
                coords: coords.iter().map(|&c| c as u32).collect(),
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
                .collect(),
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.orders.len()
            && g.coords.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((x as i64 * k).rem_euclid(n as i64)) as u32)
                .collect(),
        }
    }

    /// Order of `a` as a group element.
    pub fn order_of(&self, a: &GroupElement) -> u32 {
        a.coords.iter().zip(&self.orders).fold(1u32, |acc, (&x, &n)| {
            let o = n / num_integer::gcd(x, n);
            num_integer::lcm(acc, o)
        })
    }

    pub fn encode(&self, a: &GroupElement) -> u32 {
        a.coords
            .iter()
            .zip(&self.orders)
            .fold(0u32, |acc, (&x, &n)| acc * n + x)
    }

    pub fn decode(&self, mut code: u32) -> GroupElement {
        let mut coords = vec![0; self.orders.len()];
        for (slot, &n) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = code % n;
            code /= n;
        }
        GroupElement { coords }
    }

    /// All elements in canonical (code) order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size() as u32).map(move |c| self.decode(c))
    }

    /// `add_table[a * |A| + b] = code(a + b)`.
    pub fn addition_table(&self) -> Vec<u32> {
        let n = self.size();
        let elems: Vec<GroupElement> = self.elements().collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(self.encode(&self.add(a, b)));
            }
        }
        table
    }

    pub fn negation_table(&self) -> Vec<u32> {
        self.elements().map(|a| self.encode(&self.neg(&a))).collect()
    }

    pub fn is_elementary(&self) -> Option<u32> {
        let first = *self.orders.first()?;
        (self.orders.iter().all(|&n| n == first) && crate::is_prime(first as u64)).then_some(first)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite multiset of elements of an abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    group: AbelianGroup,
    // (element code, multiplicity), sorted by code, multiplicities positive
    counts: Vec<(u32, u32)>,
}

impl Sequence {
    pub fn empty(group: &AbelianGroup) -> Self {
        Sequence { group: group.clone(), counts: Vec::new() }
    }

    pub fn from_elements<'a, I>(group: &AbelianGroup, elems: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut codes = Vec::new();
        for e in elems {
            if !group.contains(e) {
                return Err(GroupError::BadElement {
                    coords: e.coords.clone(),
                    orders: group.orders.clone(),
                });
            }
            codes.push(group.encode(e));
        }
        Ok(Self::from_codes(group, codes))
    }

    /// Builds a sequence from element codes; codes must be below `|A|`.
    pub fn from_codes<I: IntoIterator<Item = u32>>(group: &AbelianGroup, codes: I) -> Self {
        let mut codes: Vec<u32> = codes.into_iter().collect();
        debug_assert!(codes.iter().all(|&c| (c as usize) < group.size()));
        codes.sort_unstable();
        let mut counts: Vec<(u32, u32)> = Vec::new();
        for c in codes {
            match counts.last_mut() {
                Some((last, n)) if *last == c => *n += 1,
                _ => counts.push((c, 1)),
            }
        }
        Sequence { group: group.clone(), counts }
    }

    /// Builds from a dense count vector indexed by element code.
    pub fn from_count_vector(group: &AbelianGroup, counts: &[u32]) -> Self {
        let counts = counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(c, &n)| (c as u32, n))
            .collect();
        Sequence { group: group.clone(), counts }
    }

    /// `a^[k]`.
    pub fn power(group: &AbelianGroup, a: &GroupElement, k: u32) -> Result<Self, GroupError> {
        if !group.contains(a) {
            return Err(GroupError::BadElement {
                coords: a.coords.clone(),
                orders: group.orders.clone(),
            });
        }
        let counts = if k == 0 { vec![] } else { vec![(group.encode(a), k)] };
        Ok(Sequence { group: group.clone(), counts })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.counts.iter().map(|&(_, n)| n as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `v_a(S)`.
    pub fn multiplicity(&self, a: &GroupElement) -> u32 {
        let code = self.group.encode(a);
        self.multiplicity_code(code)
    }

    pub fn multiplicity_code(&self, code: u32) -> u32 {
        self.counts
            .binary_search_by_key(&code, |&(c, _)| c)
            .map(|i| self.counts[i].1)
            .unwrap_or(0)
    }

    /// `(code, multiplicity)` pairs in code order.
    pub fn counts(&self) -> &[(u32, u32)] {
        &self.counts
    }

    pub fn count_vector(&self) -> Vec<u32> {
        let mut v = vec![0; self.group.size()];
        for &(c, n) in &self.counts {
            v[c as usize] = n;
        }
        v
    }

    /// Element codes with repetition, ascending.
    pub fn codes(&self) -> Vec<u32> {
        self.counts
            .iter()
            .flat_map(|&(c, n)| std::iter::repeat(c).take(n as usize))
            .collect()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.codes().into_iter().map(|c| self.group.decode(c)).collect()
    }

    pub fn distinct(&self) -> impl Iterator<Item = (GroupElement, u32)> + '_ {
        self.counts.iter().map(|&(c, n)| (self.group.decode(c), n))
    }

    /// `S * T`.
    pub fn concat(&self, other: &Sequence) -> Result<Sequence, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        let mut out = Vec::with_capacity(self.counts.len() + other.counts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.counts.len() || j < other.counts.len() {
            match (self.counts.get(i), other.counts.get(j)) {
                (Some(&(a, n)), Some(&(b, m))) if a == b => {
                    out.push((a, n + m));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, n)), Some(&(b, _))) if a < b => {
                    out.push((a, n));
                    i += 1;
                }
                (Some(&(a, n)), None) => {
                    out.push((a, n));
                    i += 1;
                }
                (_, Some(&(b, m))) => {
                    out.push((b, m));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Sequence { group: self.group.clone(), counts: out })
    }

    pub fn push(&mut self, a: &GroupElement) {
        let code = self.group.encode(a);
        match self.counts.binary_search_by_key(&code, |&(c, _)| c) {
            Ok(i) => self.counts[i].1 += 1,
            Err(i) => self.counts.insert(i, (code, 1)),
        }
    }

    /// `T | S`.
    pub fn divides(&self, t: &Sequence) -> bool {
        // self = S, t = T: does T divide S?
        self.group == t.group
            && t.counts
                .iter()
                .all(|&(c, n)| self.multiplicity_code(c) >= n)
    }

    /// `S * T^[-1]`, defined when `T | S`.
    pub fn remove(&self, t: &Sequence) -> Result<Sequence, GroupError> {
        if self.group != t.group {
            return Err(GroupError::GroupMismatch);
        }
        if !self.divides(t) {
            return Err(GroupError::NotDivisor(t.to_string()));
        }
        let counts = self
            .counts
            .iter()
            .filter_map(|&(c, n)| {
                let left = n - t.multiplicity_code(c);
                (left > 0).then_some((c, left))
            })
            .collect();
        Ok(Sequence { group: self.group.clone(), counts })
    }

    /// `sigma(S)`; the empty sum is 0.
    pub fn sigma(&self) -> GroupElement {
        let g = &self.group;
        self.counts.iter().fold(g.zero(), |acc, &(c, n)| {
            g.add(&acc, &g.scale(n as i64, &g.decode(c)))
        })
    }

    pub fn is_zero_sum(&self) -> bool {
        self.sigma().is_zero()
    }

    /// `Sigma(S)`: sums of all non-empty subsequences, built one element at a
    /// time via `Sigma(S a) = Sigma(S) u {a} u (a + Sigma(S))`.
    pub fn partial_sums(&self) -> BTreeSet<GroupElement> {
        let n = self.group.size();
        let add = self.group.addition_table();
        let mut seen = vec![false; n];
        for code in self.codes() {
            let before: Vec<usize> = (0..n).filter(|&s| seen[s]).collect();
            seen[code as usize] = true;
            for s in before {
                seen[add[s * n + code as usize] as usize] = true;
            }
        }
        (0..n)
            .filter(|&s| seen[s])
            .map(|s| self.group.decode(s as u32))
            .collect()
    }

    pub fn is_zero_sum_free(&self) -> bool {
        !self.partial_sums().contains(&self.group.zero())
    }

    /// Applies a homomorphism-like map element-wise, e.g. a projection.
    pub fn map<F>(&self, target: &AbelianGroup, f: F) -> Sequence
    where
        F: Fn(&GroupElement) -> GroupElement,
    {
        let codes = self.counts.iter().flat_map(|&(c, n)| {
            let image = target.encode(&f(&self.group.decode(c)));
            std::iter::repeat(image).take(n as usize)
        });
        Sequence::from_codes(target, codes)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|&(c, n)| {
                let e = self.group.decode(c);
                if n == 1 {
                    e.to_string()
                } else {
                    format!("{e}^{n}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(orders: &[u32]) -> AbelianGroup {
        AbelianGroup::new(orders).unwrap()
    }

    fn seq(g: &AbelianGroup, items: &[(&[u32], u32)]) -> Sequence {
        let mut s = Sequence::empty(g);
        for (coords, k) in items {
            let p = Sequence::power(g, &g.element(coords).unwrap(), *k).unwrap();
            s = s.concat(&p).unwrap();
        }
        s
    }

    #[test]
    fn canonical_form_drops_trivial_factors() {
        assert_eq!(c(&[1, 3, 1]), c(&[3]));
        assert_eq!(c(&[1]).size(), 1);
        assert!(c(&[]).orders().is_empty());
        assert!(matches!(AbelianGroup::new(&[0]), Err(GroupError::ZeroOrder)));
    }

    #[test]
    fn encode_roundtrip_and_order() {
        let g = c(&[2, 4, 3]);
        for code in 0..g.size() as u32 {
            assert_eq!(g.encode(&g.decode(code)), code);
        }
        let elems: Vec<_> = g.elements().collect();
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
    }

    #[test]
    fn sigma_examples() {
        let c3 = c(&[3]);
        assert!(Sequence::empty(&c3).sigma().is_zero());
        let c33 = c(&[3, 3]);
        assert!(seq(&c33, &[(&[1, 0], 1), (&[2, 0], 1)]).sigma().is_zero());
        assert!(seq(&c3, &[(&[1], 5), (&[2], 2)]).sigma().is_zero());
    }

    #[test]
    fn partial_sums_examples() {
        let c3 = c(&[3]);
        let s = seq(&c3, &[(&[1], 2)]);
        let sums: Vec<_> = s.partial_sums().into_iter().collect();
        assert_eq!(sums, vec![c3.element(&[1]).unwrap(), c3.element(&[2]).unwrap()]);
        assert!(s.is_zero_sum_free());
        let t = seq(&c3, &[(&[1], 1), (&[2], 1)]);
        assert_eq!(t.partial_sums().len(), 3);
        assert!(!t.is_zero_sum_free());
        assert!(Sequence::empty(&c3).partial_sums().is_empty());
        let c7 = c(&[7]);
        assert!(seq(&c7, &[(&[3], 6)]).is_zero_sum_free());
    }

    #[test]
    fn remove_requires_divisor() {
        let c3 = c(&[3]);
        let s = seq(&c3, &[(&[1], 2), (&[2], 1)]);
        let t = seq(&c3, &[(&[1], 1)]);
        let r = s.remove(&t).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.multiplicity(&c3.element(&[1]).unwrap()), 1);
        assert!(s.remove(&seq(&c3, &[(&[0], 1)])).is_err());
    }

    #[test]
    fn trivial_group_sequences() {
        let t = AbelianGroup::trivial();
        let s = Sequence::power(&t, &t.zero(), 3).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.sigma().is_zero());
        assert!(!s.is_zero_sum_free());
    }
}
