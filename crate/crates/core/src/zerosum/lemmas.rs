//! Constructive forms of the zero-sum lemmas over `C_p` and `C_p x C_p`.

use serde::Serialize;

use super::factor::{factor_k, max_factorization, shortest_zero_sum};
use super::subsets::find_subsequence;
use super::{cyclic_prime, require_prime, square_prime, Factorization, SearchBudget, SearchError};
use crate::abelian::{AbelianGroup, GroupElement, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CdReport {
    pub sigma_size: usize,
    pub bound: usize,
    pub pass: bool,
}

/// `|Sigma(S)| >= min(p, |S|)` for `S` over `C_p \ {0}`.
pub fn cd_check(s: &Sequence) -> Result<CdReport, SearchError> {
    let p = cyclic_prime(s.group())?;
    if s.multiplicity_code(0) > 0 {
        return Err(SearchError::Precondition(format!("{s} contains 0")));
    }
    let sigma_size = s.partial_sums().len();
    let bound = (p as usize).min(s.len());
    Ok(CdReport { sigma_size, bound, pass: sigma_size >= bound })
}

/// All zero-sum-free sequences of length `p - 1` over `C_p`, in canonical order.
pub fn classify_maximal_zsf(p: u32, budget: &SearchBudget) -> Result<Vec<Sequence>, SearchError> {
    require_prime(p as u64)?;
    if p > budget.max_classify_prime {
        return Err(SearchError::BudgetExceeded {
            what: "prime",
            size: p as usize,
            limit: budget.max_classify_prime as usize,
        });
    }
    let group = AbelianGroup::cyclic(p)?;
    let mut out = Vec::new();
    let mut path = Vec::new();
    let target = (p - 1) as usize;
    collect_zsf(p, 1, 1u64, target, &mut path, &mut |codes| {
        out.push(Sequence::from_codes(&group, codes.iter().copied()));
    });
    Ok(out)
}

/// Enumerates zero-sum-free multisets of exactly `target` nonzero residues mod
/// `p`, tracking partial sums (with the empty sum) as a bitmask.
fn collect_zsf<F: FnMut(&[u32])>(
    p: u32,
    start: u32,
    sums: u64,
    target: usize,
    path: &mut Vec<u32>,
    out: &mut F,
) {
    if path.len() == target {
        out(path);
        return;
    }
    for a in start..p {
        if sums >> ((p - a) % p) & 1 == 1 {
            continue;
        }
        let rotated = ((sums << a) | (sums >> (p - a))) & ((1u64 << p) - 1);
        path.push(a);
        collect_zsf(p, a, sums | rotated, target, path, out);
        path.pop();
    }
}

/// A zero-sum subsequence `X | S` of length `p` or `2p`, for `S` over
/// `C_p x C_p` with `|S| >= 3p - 2`. Length `p` is preferred; among each length
/// the lexicographically smallest choice is returned.
pub fn find_short_zero_sum(s: &Sequence) -> Result<Sequence, SearchError> {
    let p = square_prime(s.group())? as usize;
    if s.len() < 3 * p - 2 {
        return Err(SearchError::Precondition(format!(
            "|S| = {} is below 3p - 2 = {}",
            s.len(),
            3 * p - 2
        )));
    }
    let zero = s.group().zero();
    find_subsequence(s, p, &zero)
        .or_else(|| find_subsequence(s, 2 * p, &zero))
        .ok_or_else(|| SearchError::Internal(format!("no zero-sum subsequence of length p or 2p in {s}")))
}

/// At least `2p - 1` non-empty zero-sum factors of `S` over `C_p`, given
/// `|S| >= p^2 - 1` and `v_0(S) >= p + 1`.
pub fn nullak_factor(s: &Sequence) -> Result<Factorization, SearchError> {
    let p = cyclic_prime(s.group())? as usize;
    if s.len() < p * p - 1 {
        return Err(SearchError::Precondition(format!("|S| = {} is below p^2 - 1 = {}", s.len(), p * p - 1)));
    }
    let zeros = s.multiplicity_code(0) as usize;
    if zeros < p + 1 {
        return Err(SearchError::Precondition(format!("v_0(S) = {zeros} is below p + 1 = {}", p + 1)));
    }
    let f = max_factorization(s);
    if f.len() < 2 * p - 1 || !f.is_valid_for(s) {
        return Err(SearchError::Internal(format!(
            "only {} zero-sum factors found, 2p - 1 = {} required",
            f.len(),
            2 * p - 1
        )));
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparFactorization {
    /// `S_1, ..., S_{p-1}` in order, then the remainder `R`.
    pub factorization: Factorization,
    /// True when the first extraction had length `2p` and was split.
    pub split_case: bool,
}

impl SeparFactorization {
    pub fn first(&self) -> &Sequence {
        &self.factorization.factors[0]
    }

    pub fn second(&self) -> &Sequence {
        &self.factorization.factors[1]
    }
}

fn first_coordinate(cp: &AbelianGroup) -> impl Fn(&GroupElement) -> GroupElement {
    let cp = cp.clone();
    move |e: &GroupElement| cp.element(&e.coords()[..1]).expect("coordinate below p")
}

/// Factorization `S = S_1 ... S_{p-1} R` over `C_p x C_p` (`p >= 5`) with
/// `T | S (S_1 S_2)^[-1]` and `Sigma(pi(S_1)) = C_p`, where `pi` projects onto
/// the first coordinate.
///
/// Construction: take the subsequence `S*` of `S T^[-1]` avoiding
/// `ker(pi)`, extract `X | S*` of length `p` or `2p`; a `2p`-long `X` splits
/// into two zero-sums (longer one first), a `p`-long one becomes `S_1` and a
/// second short zero-sum is taken outside `S_1 T`. The rest has length at least
/// `D_{p-3}(C_p^2) = p^2 - 2p - 1` and supplies the remaining `p - 3` factors.
pub fn separ_factor(s: &Sequence, t: &Sequence, p: u32) -> Result<SeparFactorization, SearchError> {
    require_prime(p as u64)?;
    if p < 5 {
        return Err(SearchError::Precondition(format!("p = {p} is below 5")));
    }
    let group = s.group();
    if square_prime(group)? != p {
        return Err(SearchError::Precondition(format!("S lives over C({group}), expected C_{p} x C_{p}")));
    }
    let pu = p as usize;
    if s.len() < pu * pu - 1 {
        return Err(SearchError::Precondition(format!("|S| = {} is below p^2 - 1 = {}", s.len(), pu * pu - 1)));
    }
    let cp = AbelianGroup::cyclic(p)?;
    let project = first_coordinate(&cp);
    let zero_proj = s.map(&cp, &project).multiplicity_code(0) as usize;
    if zero_proj > pu {
        return Err(SearchError::Precondition(format!("v_0(pi(S)) = {zero_proj} exceeds p = {p}")));
    }
    if !s.divides(t) {
        return Err(SearchError::Precondition(format!("T = {t} does not divide S")));
    }
    if t.len() > pu - 1 {
        return Err(SearchError::Precondition(format!("|T| = {} exceeds p - 1 = {}", t.len(), pu - 1)));
    }

    let outside_t = s.remove(t)?;
    let star_codes = outside_t
        .codes()
        .into_iter()
        .filter(|&c| group.decode(c).coords()[0] != 0);
    let star = Sequence::from_codes(group, star_codes);
    let x = find_short_zero_sum(&star)?;

    let (s1, s2, split_case) = if x.len() == 2 * pu {
        // |X| = 2p > D(C_p^2) = 2p - 1, so X has a proper zero-sum part
        let y = shortest_zero_sum(&x)
            .filter(|y| y.len() < x.len())
            .ok_or_else(|| SearchError::Internal(format!("{x} has no proper zero-sum subsequence")))?;
        let z = x.remove(&y)?;
        if y.len() >= z.len() {
            (y, z, true)
        } else {
            (z, y, true)
        }
    } else {
        let leftover = s.remove(&x)?.remove(t)?;
        let x2 = find_short_zero_sum(&leftover)?;
        let s2 = if x2.len() == pu {
            x2
        } else {
            let y = shortest_zero_sum(&x2)
                .filter(|y| y.len() < x2.len())
                .ok_or_else(|| SearchError::Internal(format!("{x2} has no proper zero-sum subsequence")))?;
            let z = x2.remove(&y)?;
            if y.len() <= z.len() {
                y
            } else {
                z
            }
        };
        (x, s2, false)
    };

    let rest = s.remove(&s1)?.remove(&s2)?;
    let tail = factor_k(&rest, p - 3)?;
    let mut factors = vec![s1, s2];
    factors.extend(tail.factors);
    let result = SeparFactorization {
        factorization: Factorization { factors, remainder: tail.remainder },
        split_case,
    };
    verify_separ(s, t, p, &result)?;
    Ok(result)
}

fn verify_separ(s: &Sequence, t: &Sequence, p: u32, r: &SeparFactorization) -> Result<(), SearchError> {
    let f = &r.factorization;
    let fail = |what: &str| Err(SearchError::Internal(format!("separ postcondition failed: {what}")));
    if f.len() != (p - 1) as usize || !f.is_valid_for(s) {
        return fail("factor count or product");
    }
    let outside = s.remove(r.first())?.remove(r.second())?;
    if !outside.divides(t) {
        return fail("T meets S_1 S_2");
    }
    let cp = AbelianGroup::cyclic(p)?;
    let projected = r.first().map(&cp, first_coordinate(&cp));
    if projected.partial_sums().len() != p as usize {
        return fail("Sigma(pi(S_1)) is not all of C_p");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cd_examples() {
        let c3 = AbelianGroup::cyclic(3).unwrap();
        let r = cd_check(&Sequence::from_codes(&c3, [1, 1])).unwrap();
        assert_eq!(r, CdReport { sigma_size: 2, bound: 2, pass: true });
        let c7 = AbelianGroup::cyclic(7).unwrap();
        let r = cd_check(&Sequence::from_codes(&c7, [1, 2, 4])).unwrap();
        assert!(r.pass && r.bound == 3 && r.sigma_size >= 3);
        let r = cd_check(&Sequence::from_codes(&c7, [3; 10])).unwrap();
        assert_eq!(r, CdReport { sigma_size: 7, bound: 7, pass: true });
        assert!(cd_check(&Sequence::from_codes(&c7, [0, 1])).is_err());
        let c9 = AbelianGroup::cyclic(9).unwrap();
        assert!(cd_check(&Sequence::from_codes(&c9, [1])).is_err());
    }

    #[test]
    fn classify_examples() {
        let b = SearchBudget::default();
        let s3: Vec<String> = classify_maximal_zsf(3, &b).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(s3, vec!["(1)^2", "(2)^2"]);
        assert_eq!(classify_maximal_zsf(5, &b).unwrap().len(), 4);
        let s2: Vec<String> = classify_maximal_zsf(2, &b).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(s2, vec!["(1)"]);
        assert!(matches!(classify_maximal_zsf(11, &b), Err(SearchError::BudgetExceeded { .. })));
        assert!(matches!(classify_maximal_zsf(4, &b), Err(SearchError::NotPrime(4))));
    }

    #[test]
    fn short_zero_sum_on_repeated_element() {
        let g = AbelianGroup::new(&[3, 3]).unwrap();
        let a = g.encode(&g.element(&[1, 0]).unwrap());
        let s = Sequence::from_codes(&g, [a; 7]);
        assert_eq!(find_short_zero_sum(&s).unwrap(), Sequence::from_codes(&g, [a; 3]));
        assert!(find_short_zero_sum(&Sequence::from_codes(&g, [a; 6])).is_err());
    }

    #[test]
    fn nullak_examples() {
        let c3 = AbelianGroup::cyclic(3).unwrap();
        let s = Sequence::from_codes(&c3, [0, 0, 0, 0, 1, 1, 1, 2]);
        let f = nullak_factor(&s).unwrap();
        assert!(f.len() >= 5);
        assert!(f.is_valid_for(&s));
        assert_eq!(nullak_factor(&Sequence::from_codes(&c3, [0; 8])).unwrap().len(), 8);
        assert!(nullak_factor(&Sequence::from_codes(&c3, [0, 0, 0, 1, 1, 1, 1, 2])).is_err());
    }

    #[test]
    fn separ_rejects_small_primes_and_heavy_kernel() {
        let g3 = AbelianGroup::new(&[3, 3]).unwrap();
        let s = Sequence::from_codes(&g3, [1; 8]);
        assert!(matches!(separ_factor(&s, &Sequence::empty(&g3), 3), Err(SearchError::Precondition(_))));

        let g = AbelianGroup::new(&[5, 5]).unwrap();
        // six elements with first coordinate 0 exceed p = 5
        let mut codes = vec![1u32; 6];
        codes.extend(std::iter::repeat(5).take(18));
        let s = Sequence::from_codes(&g, codes);
        assert!(matches!(separ_factor(&s, &Sequence::empty(&g), 5), Err(SearchError::Precondition(_))));
    }
}
