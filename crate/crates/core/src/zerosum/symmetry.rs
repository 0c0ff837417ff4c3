//! Automorphism groups used to collapse symmetric branches of the searches.

use crate::abelian::AbelianGroup;

/// Above this many automorphisms canonicalization costs more than it saves.
const MAX_AUTOMORPHISMS: usize = 2_000;

/// Automorphisms of `group` as permutations of element codes.
///
/// For elementary abelian `C_p^r` this is all of `GL(r, p)` when that group is
/// small; otherwise it is the subgroup of multiplications by units modulo the
/// exponent. The identity is always first.
pub fn automorphisms(group: &AbelianGroup) -> Vec<Vec<u32>> {
    if let Some(p) = group.is_elementary() {
        let r = group.rank();
        let entries = (p as u64).checked_pow((r * r) as u32);
        if let Some(total) = entries.filter(|&t| t <= 1 << 20) {
            let gl = general_linear(group, p, r, total);
            if gl.len() <= MAX_AUTOMORPHISMS {
                return gl;
            }
        }
    }
    unit_multiples(group)
}

fn unit_multiples(group: &AbelianGroup) -> Vec<Vec<u32>> {
    let exp = group.exponent().max(1);
    (1..=exp)
        .filter(|&u| num_integer::gcd(u, exp) == 1)
        .map(|u| {
            group
                .elements()
                .map(|x| group.encode(&group.scale(u as i64, &x)))
                .collect()
        })
        .collect()
}

fn general_linear(group: &AbelianGroup, p: u32, r: usize, total: u64) -> Vec<Vec<u32>> {
    let elems: Vec<_> = group.elements().collect();
    let mut out = Vec::new();
    let mut identity_first = None;
    for idx in 0..total {
        // column-major digits of idx give the matrix entries
        let mut m = vec![0u32; r * r];
        let mut t = idx;
        for slot in m.iter_mut() {
            *slot = (t % p as u64) as u32;
            t /= p as u64;
        }
        let perm: Vec<u32> = elems
            .iter()
            .map(|x| {
                let coords: Vec<i64> = (0..r)
                    .map(|i| {
                        (0..r)
                            .map(|j| m[i * r + j] as i64 * x.coords()[j] as i64)
                            .sum::<i64>()
                    })
                    .collect();
                group.encode(&group.element_mod(&coords).expect("rank matches"))
            })
            .collect();
        // bijective iff the matrix is invertible
        let mut seen = vec![false; perm.len()];
        if perm.iter().all(|&c| !std::mem::replace(&mut seen[c as usize], true)) {
            if perm.iter().enumerate().all(|(i, &c)| i as u32 == c) {
                identity_first = Some(out.len());
            }
            out.push(perm);
        }
    }
    if let Some(i) = identity_first {
        out.swap(0, i);
    }
    out
}

/// Lexicographically smallest image of a count vector under `auts`.
pub(crate) fn canonical(counts: &[u8], auts: &[Vec<u32>], scratch: &mut Vec<u8>) -> Vec<u8> {
    let mut best = counts.to_vec();
    scratch.resize(counts.len(), 0);
    for perm in auts.iter().skip(1) {
        for (c, &k) in counts.iter().enumerate() {
            scratch[perm[c] as usize] = k;
        }
        if scratch[..] < best[..] {
            best.copy_from_slice(scratch);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        let c = |o: &[u32]| AbelianGroup::new(o).unwrap();
        assert_eq!(automorphisms(&c(&[3, 3])).len(), 48);
        assert_eq!(automorphisms(&c(&[2, 2, 2])).len(), 168);
        assert_eq!(automorphisms(&c(&[5, 5])).len(), 480);
        assert_eq!(automorphisms(&c(&[9])).len(), 6);
        assert_eq!(automorphisms(&c(&[2, 4])).len(), 2);
        assert_eq!(automorphisms(&AbelianGroup::trivial()).len(), 1);
        for perm in automorphisms(&c(&[5, 5])).iter().take(1) {
            assert!(perm.iter().enumerate().all(|(i, &x)| i as u32 == x));
        }
    }
}
