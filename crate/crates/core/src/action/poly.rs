//! Monomials and polynomials over `Q(w)` in a fixed, indexed set of variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::cyclotomic::Cyclotomic;

/// A monomial as a dense exponent vector over the module's variables.
///
/// Ordered graded-lexicographically: higher degree first decides, then the
/// exponent of the earliest variable. The leading monomial of a polynomial is
/// its maximum.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    /// The monomial `prod x_v^e` for the listed `(v, e)` pairs.
    pub fn from_pairs(nvars: usize, pairs: &[(usize, u16)]) -> Self {
        let mut m = Self::one(nvars);
        for &(v, e) in pairs {
            m.exps[v] += e;
        }
        m
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_pairs(nvars, &[(v, 1)])
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, v: usize) -> u16 {
        self.exps[v]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial { exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    /// Variables with multiplicity, in index order.
    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().flat_map(|(v, &e)| std::iter::repeat(v).take(e as usize))
    }

    /// Support with exponents.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| (v, e))
    }

    /// Every divisor of `self` (including 1 and `self`).
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.nvars())];
        for (v, e) in self.support() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for m in &out {
                for k in 0..=e {
                    let mut d = m.clone();
                    d.exps[v] = k;
                    next.push(d);
                }
            }
            out = next;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `nvars` variables, in descending order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(v: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if v + 1 == cur.len() {
            cur[v] = left;
            out.push(Monomial { exps: cur.clone() });
            cur[v] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[v] = e;
            rec(v + 1, left - e, cur, out);
        }
        cur[v] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d as u16, &mut vec![0; nvars], &mut out);
    out
}

/// Number of monomials of degree `d` in `nvars` variables, saturating.
pub fn count_monomials(nvars: usize, d: u32) -> u64 {
    if nvars == 0 {
        return (d == 0) as u64;
    }
    // C(d + n - 1, n - 1)
    let k = (nvars - 1) as u64;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (d as u128 + i as u128) / i as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Finite linear combination of monomials with nonzero `Q(w)` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    p: u32,
    nvars: usize,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl Polynomial {
    pub fn zero(p: u32, nvars: usize) -> Self {
        Polynomial { p, nvars, terms: BTreeMap::new() }
    }

    pub fn from_monomial(p: u32, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut f = Self::zero(p, nvars);
        f.terms.insert(m, Cyclotomic::root_unchecked(p, 0));
        f
    }

    pub fn from_term(p: u32, m: Monomial, c: Cyclotomic) -> Self {
        let nvars = m.nvars();
        let mut f = Self::zero(p, nvars);
        f.add_term(m, &c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Cyclotomic)>>(p: u32, nvars: usize, terms: I) -> Self {
        let mut f = Self::zero(p, nvars);
        for (m, c) in terms {
            f.add_term(m, &c);
        }
        f
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Cyclotomic> {
        self.terms
    }

    /// Wraps a term map whose coefficients are already known to be nonzero.
    pub(crate) fn from_map(p: u32, nvars: usize, terms: BTreeMap<Monomial, Cyclotomic>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial { p, nvars, terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Cyclotomic> {
        self.terms.get(m)
    }

    /// Largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Cyclotomic) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), &(a * c));
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Cyclotomic::root_unchecked(self.p, 0))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.p, self.nvars);
        }
        Polynomial {
            p: self.p,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Polynomial {
        self.scale(&Cyclotomic::from_rational(self.p, q.clone()).expect("conductor is prime"))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            p: self.p,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(u, a)| (u.mul(m), a.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.p, self.nvars);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::from_monomial(self.p, Monomial::one(self.nvars));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.p, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[v] -= 1;
            out.add_term(Monomial { exps }, &c.scale(&BigRational::from_integer(e.into())));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x3 = Monomial::from_exponents(vec![3, 0, 0]);
        let xyz = Monomial::from_exponents(vec![1, 1, 1]);
        let z4 = Monomial::from_exponents(vec![0, 0, 4]);
        assert!(x3 > xyz);
        assert!(z4 > x3);
        let all = monomials_of_degree(3, 3);
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], x3);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(count_monomials(3, 3), 10);
        assert_eq!(count_monomials(8, 11), 31824);
    }

    #[test]
    fn divisors_and_division() {
        let m = Monomial::from_exponents(vec![2, 1, 0]);
        assert_eq!(m.divisors().len(), 6);
        let x = Monomial::var(3, 0);
        assert_eq!(x.divide_into(&m), Some(Monomial::from_exponents(vec![1, 1, 0])));
        assert_eq!(Monomial::var(3, 2).divide_into(&m), None);
    }

    #[test]
    fn arithmetic_cancels() {
        let x = Polynomial::from_monomial(3, Monomial::var(2, 0));
        let y = Polynomial::from_monomial(3, Monomial::var(2, 1));
        let s = x.add(&y);
        let d = x.sub(&y);
        let prod = s.mul(&d);
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expect);
        assert!(s.sub(&s).is_zero());
        assert_eq!(prod.homogeneous_degree(), Some(2));
        assert_eq!(x.pow(3).derivative(0), x.pow(2).scale_rational(&BigRational::from_integer(3.into())));
    }
}
