//! Constructive rewriting of an `A`-invariant monomial modulo the Hilbert
//! ideal of `H_3`, by repeated moves `u_1 u_2 r -> u_1^g u_2^(g^-1) r` with
//! `u_1, u_2` of positive degree and `A`-invariant, `g` in `<b>`. Each move
//! changes the monomial by an element of the Hilbert ideal.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::action::{Module, Monomial};
use crate::zerosum::factor_k;

use super::{InvariantEngine, InvariantError};

/// States explored by the exhaustive fallback before giving up.
const FALLBACK_STATES: usize = 4_000;

/// Output of [`homologous_rewrite`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rewrite {
    #[serde(skip)]
    pub result: Monomial,
    /// The rewritten monomial, printed with the module's variable names.
    pub text: String,
    /// Number of moves applied.
    pub moves: usize,
    /// Whether some step needed the exhaustive search.
    pub fallback: bool,
}

/// Given an `A`-invariant monomial `m` of degree `>= 10` in the
/// `V`-coordinates of an `H_3`-module, a divisor `v | m` of degree `<= 3` and
/// `v' ~ v`, finds `m' ~ m` with `v' | m'` and `m - m'` in the Hilbert ideal.
///
/// The variables of `v'` are placed one at a time. For each, the part of the
/// current monomial outside what is already placed is split into two
/// `A`-invariant factors (possible since its degree is at least `8 = D_2` of
/// the weight group) plus a rest; a variable `y` of the right block is
/// shifted onto the target directly when it lies in one of the two factors,
/// and otherwise first swapped into the first factor by an extra move. When
/// neither applies a breadth-first search over all moves takes over. The
/// result is verified before it is returned.
pub fn homologous_rewrite(
    engine: &InvariantEngine<'_>,
    m: &Monomial,
    v: &Monomial,
    v_target: &Monomial,
) -> Result<Rewrite, InvariantError> {
    let module = engine.module();
    check_preconditions(module, m, v, v_target)?;
    let mut cur = m.clone();
    let mut placed = Monomial::one(module.nvars());
    let mut moves = 0;
    let mut fallback = false;
    for target in v_target.variables() {
        let (next, used, searched) = place(module, &cur, &placed, target)?;
        cur = next;
        moves += used;
        fallback |= searched;
        placed = placed.mul(&Monomial::var(module.nvars(), target));
    }
    let ok = module.homologous(m, &cur)?
        && v_target.divides(&cur)
        && engine.in_hilbert_ideal(&module.poly(m.clone()).sub(&module.poly(cur.clone())))?;
    if !ok {
        return Err(InvariantError::SearchFailure(format!(
            "rewrite of {} failed verification",
            module.format_monomial(m)
        )));
    }
    Ok(Rewrite { text: module.format_monomial(&cur), result: cur, moves, fallback })
}

fn check_preconditions(module: &Module, m: &Monomial, v: &Monomial, v_target: &Monomial) -> Result<(), InvariantError> {
    let pre = |s: String| Err(InvariantError::Precondition(s));
    if !module.is_heisenberg() || module.p() != 3 {
        return pre(format!("{} is not an H_3-module", module.label()));
    }
    // rejects U-coordinates
    module.homologous(m, m)?;
    if !module.homologous(v, v_target)? {
        return pre("v and v' are not homologous".into());
    }
    if !v.divides(m) {
        return pre("v does not divide m".into());
    }
    if v.degree() > 3 {
        return pre(format!("deg(v) = {} exceeds 3", v.degree()));
    }
    if m.degree() < 10 {
        return pre(format!("deg(m) = {} is below 10", m.degree()));
    }
    if !module.is_a_invariant(m)? {
        return pre(format!("{} is not A-invariant", module.format_monomial(m)));
    }
    Ok(())
}

fn shift(module: &Module, u: &Monomial, n: i64) -> Monomial {
    let n = n.rem_euclid(module.p() as i64) as u32;
    module.shift_monomial(u, n).expect("V-coordinates only")
}

/// Moves `target` into `cur / placed`; returns the new monomial, the number
/// of moves used and whether the fallback search ran.
fn place(
    module: &Module,
    cur: &Monomial,
    placed: &Monomial,
    target: usize,
) -> Result<(Monomial, usize, bool), InvariantError> {
    let rest = placed.divide_into(cur).expect("placed divides the current monomial");
    if rest.exponent(target) > 0 {
        return Ok((cur.clone(), 0, false));
    }
    let block = module.block_of(target);
    let candidates: Vec<usize> = rest.support().map(|(y, _)| y).filter(|&y| module.block_of(y) == block).collect();
    for &y0 in &candidates {
        if let Some((next, used)) = direct_moves(module, &rest, placed, y0, target)? {
            return Ok((next, used, false));
        }
    }
    let goal = placed.mul(&Monomial::var(module.nvars(), target));
    search(module, cur, &goal).map(|(next, used)| (next, used, true))
}

/// `k` index of a `V`-coordinate.
fn k_of(module: &Module, v: usize) -> i64 {
    match module.variables()[v] {
        crate::action::VariableId::V { k, .. } => k as i64,
        _ => unreachable!("V-coordinates only"),
    }
}

/// Splits `rest` into `u_1 u_2 r` with `A`-invariant `u_1, u_2`, preferring to
/// put `prefer` into `u_1`, then `u_2`.
fn split(module: &Module, rest: &Monomial, prefer: usize) -> Result<Option<[Monomial; 3]>, InvariantError> {
    let phi = module.weight_sequence(rest)?;
    let Ok(f) = factor_k(&phi, 2) else {
        return Ok(None);
    };
    let g = module.weight_group();
    let code = |v: usize| {
        let (a, c) = module.variable_weight(v).expect("heisenberg");
        g.encode(&g.element(&[a, c]).expect("reduced"))
    };
    let mut pool: Vec<usize> = rest.variables().collect();
    // the preferred variable is taken first whenever its weight is requested
    pool.sort_by_key(|&v| v != prefer);
    let n = module.nvars();
    let mut parts = [Monomial::one(n), Monomial::one(n)];
    for (part, factor) in parts.iter_mut().zip(&f.factors) {
        for w in factor.codes() {
            let at = pool.iter().position(|&v| code(v) == w).expect("weights come from rest");
            *part = part.mul(&Monomial::var(n, pool.remove(at)));
        }
    }
    let r = pool.into_iter().fold(Monomial::one(n), |acc, v| acc.mul(&Monomial::var(n, v)));
    let [u1, u2] = parts;
    Ok(Some([u1, u2, r]))
}

fn direct_moves(
    module: &Module,
    rest: &Monomial,
    placed: &Monomial,
    y0: usize,
    target: usize,
) -> Result<Option<(Monomial, usize)>, InvariantError> {
    let p = module.p() as i64;
    let Some([u1, u2, r]) = split(module, rest, y0)? else {
        return Ok(None);
    };
    let u3 = r.mul(placed);
    let s = k_of(module, y0) - k_of(module, target);
    // case i: y0 sits in one of the invariant factors
    if u1.exponent(y0) > 0 {
        return Ok(Some((shift(module, &u1, s).mul(&shift(module, &u2, -s)).mul(&u3), 1)));
    }
    if u2.exponent(y0) > 0 {
        return Ok(Some((shift(module, &u2, s).mul(&shift(module, &u1, -s)).mul(&u3), 1)));
    }
    // case ii: y0 is in the rest; trade it against y of the same block type
    let (_, c0) = module.variable_weight(y0)?;
    let (a0, _) = module.variable_weight(y0)?;
    for (first, second) in [(&u1, &u2), (&u2, &u1)] {
        let Some(y) = first
            .support()
            .map(|(y, _)| y)
            .find(|&y| module.block_of(y).is_some() && module.variable_weight(y).map(|w| w.1) == Ok(c0))
        else {
            continue;
        };
        let (ay, _) = module.variable_weight(y)?;
        // phi_a(y^(b^h)) = phi_a(y) - h c0 must equal phi_a(y0)
        let inv_c = (1..p).find(|&i| (i * c0 as i64) % p == 1).expect("c0 is a unit");
        let h = ((ay as i64 - a0 as i64) * inv_c).rem_euclid(p);
        let yh = shift(module, &Monomial::var(module.nvars(), y), h);
        let first_h = shift(module, first, h);
        let t1 = yh.divide_into(&first_h).expect("y^h divides u^h").mul(&Monomial::var(module.nvars(), y0));
        let t2 = shift(module, second, -h);
        let t3 = Monomial::var(module.nvars(), y0).divide_into(&yh.mul(&u3)).expect("y0 lies in the rest");
        let next = shift(module, &t1, s).mul(&shift(module, &t2, -s)).mul(&t3);
        return Ok(Some((next, 2)));
    }
    Ok(None)
}

/// Minimal `A`-invariant divisors of positive degree.
fn atoms(module: &Module, m: &Monomial) -> Result<Vec<Monomial>, InvariantError> {
    let mut inv = Vec::new();
    for d in m.divisors() {
        if !d.is_one() && module.is_a_invariant(&d)? {
            inv.push(d);
        }
    }
    inv.sort();
    let mut out: Vec<Monomial> = Vec::new();
    for d in inv {
        if !out.iter().any(|a| a.divides(&d)) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Breadth-first search over single moves with atoms as the two factors.
fn search(module: &Module, start: &Monomial, goal: &Monomial) -> Result<(Monomial, usize), InvariantError> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((cur, depth)) = queue.pop_front() {
        if goal.divides(&cur) {
            return Ok((cur, depth));
        }
        let at = atoms(module, &cur)?;
        for (i, u1) in at.iter().enumerate() {
            for u2 in &at[i..] {
                let both = u1.mul(u2);
                let Some(r) = both.divide_into(&cur) else {
                    continue;
                };
                for s in 1..module.p() as i64 {
                    let next = shift(module, u1, s).mul(&shift(module, u2, -s)).mul(&r);
                    if seen.len() >= FALLBACK_STATES {
                        return Err(InvariantError::SearchFailure(format!(
                            "no rewrite of {} found within {FALLBACK_STATES} states",
                            module.format_monomial(start)
                        )));
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back((next, depth + 1));
                    }
                }
            }
        }
    }
    Err(InvariantError::SearchFailure(format!(
        "no rewrite of {} exists under single moves",
        module.format_monomial(start)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{build_module, DEFAULT_GROUP_BUDGET};

    #[test]
    fn identity_rewrite_and_example() {
        let m = build_module(&"p=3;V=[1:1]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
        let e = InvariantEngine::new(&m);
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        let big = m.monomial(&[(x, 5), (y, 5), (z, 2)]);
        let v = m.monomial(&[(x, 3)]);
        let same = homologous_rewrite(&e, &big, &v, &v).unwrap();
        assert_eq!(same.result, big);
        assert_eq!(same.moves, 0);
        let vp = m.monomial(&[(z, 3)]);
        let r = homologous_rewrite(&e, &big, &v, &vp).unwrap();
        assert!(vp.divides(&r.result));
        assert!(m.homologous(&big, &r.result).unwrap());

        // (xyz)^2 x^3 y has weight (1,1): not A-invariant
        let bad = m.monomial(&[(x, 5), (y, 3), (z, 2)]);
        assert!(matches!(homologous_rewrite(&e, &bad, &v, &vp), Err(InvariantError::Precondition(_))));
    }
}
