use crate::action::{act, root, GroupAction, Module, MonomialMatrix, Polynomial, VariableId};

use super::{reciprocal, InvariantError};

/// Reynolds operator `(1/|G|) sum_g f^g`.
pub fn reynolds(group: &GroupAction, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.conductor(), f.nvars());
    for g in group.elements() {
        for (m, c) in act(g, f).into_terms() {
            out.add_term(m, &c);
        }
    }
    out.scale(&reciprocal(f.conductor(), group.order()))
}

/// A normal subgroup `N` of `G` together with a transversal of its cosets.
#[derive(Debug, Clone)]
pub struct Quotient<'g> {
    group: &'g GroupAction,
    normal: GroupAction,
    members: Vec<bool>,
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
}

impl<'g> Quotient<'g> {
    pub fn new(group: &'g GroupAction, normal: GroupAction) -> Result<Self, InvariantError> {
        let mut members = vec![false; group.order()];
        for n in normal.elements() {
            let i = group
                .index_of(n)
                .ok_or_else(|| InvariantError::Precondition("N is not a subgroup of G".into()))?;
            members[i] = true;
        }
        for g in 0..group.order() {
            for n in normal.generator_names() {
                let n = group.index_of(normal.generator(n).expect("named")).expect("member");
                if !members[group.mul(group.mul(group.inv(g), n), g)] {
                    return Err(InvariantError::Precondition("N is not normal in G".into()));
                }
            }
        }
        // right cosets N t; f^(n t) = f^t for N-invariant f
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut transversal = Vec::new();
        for t in 0..group.order() {
            if coset_of[t] != usize::MAX {
                continue;
            }
            for (n, &inside) in members.iter().enumerate() {
                if inside {
                    coset_of[group.mul(n, t)] = transversal.len();
                }
            }
            transversal.push(t);
        }
        Ok(Quotient { group, normal, members, transversal, coset_of })
    }

    pub fn group(&self) -> &GroupAction {
        self.group
    }

    pub fn normal(&self) -> &GroupAction {
        &self.normal
    }

    /// Indices (in `G`) of the chosen coset representatives.
    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members[g]
    }

    /// Position in the transversal of the coset containing `g`.
    pub fn coset(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    fn require_invariant(&self, f: &Polynomial) -> Result<(), InvariantError> {
        if self.normal.fixes(f) {
            Ok(())
        } else {
            Err(InvariantError::Precondition("polynomial is not invariant under N".into()))
        }
    }

    /// Relative transfer `tau_N^G(f) = (1/|G/N|) sum_t f^t` over the
    /// transversal; a `G`-invariant, equal to `f` when `f` already is one.
    pub fn transfer(&self, f: &Polynomial) -> Result<Polynomial, InvariantError> {
        self.require_invariant(f)?;
        let mut out = Polynomial::zero(f.conductor(), f.nvars());
        for &t in &self.transversal {
            out = out.add(&act(self.group.element(t), f));
        }
        Ok(out.scale(&reciprocal(f.conductor(), self.index())))
    }

    /// The sum `sum_t f^t` over the transversal, without normalization.
    pub fn orbit_sum(&self, f: &Polynomial) -> Result<Polynomial, InvariantError> {
        self.require_invariant(f)?;
        let mut out = Polynomial::zero(f.conductor(), f.nvars());
        for &t in &self.transversal {
            out = out.add(&act(self.group.element(t), f));
        }
        Ok(out)
    }

    /// `tau_chi(f) = (1/|G/N|) sum_t chi(t)^-1 f^t`, the component of `f`
    /// on which `G` acts by `chi`.
    pub fn semi_projection(&self, chi: &Character, f: &Polynomial) -> Result<Polynomial, InvariantError> {
        if !chi.is_trivial_on(self) {
            return Err(InvariantError::Precondition("character is not trivial on N".into()));
        }
        self.require_invariant(f)?;
        let p = f.conductor();
        let mut out = Polynomial::zero(p, f.nvars());
        for &t in &self.transversal {
            let w = root(p, (p - chi.value(t)) % p);
            out = out.add(&act(self.group.element(t), f).scale(&w));
        }
        Ok(out.scale(&reciprocal(p, self.index())))
    }
}

/// A character `G -> <w>` given by its exponent at every element of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    name: String,
    p: u32,
    values: Vec<u32>,
}

impl Character {
    pub fn new(name: impl Into<String>, p: u32, values: Vec<u32>) -> Self {
        Character { name: name.into(), p, values: values.into_iter().map(|v| v % p).collect() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Exponent `e` with `chi(g) = w^e`.
    pub fn value(&self, g: usize) -> u32 {
        self.values[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_trivial_on(&self, q: &Quotient<'_>) -> bool {
        (0..self.values.len()).filter(|&g| q.contains(g)).all(|g| self.values[g] == 0)
    }

    /// Checks `chi(gh) = chi(g) chi(h)`.
    pub fn is_homomorphism(&self, group: &GroupAction) -> bool {
        (0..group.order()).all(|g| {
            (0..group.order()).all(|h| self.values[group.mul(g, h)] == (self.values[g] + self.values[h]) % self.p)
        })
    }
}

/// Normal subgroups of `H_p` whose quotient characters the builder supplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientKind {
    /// `N = A = <a, c>`, `G/N = <b> ~ C_p`; `chi_j(a^i b^n c^l) = w^(jn)`.
    A,
    /// `N = <c>`, `G/N ~ C_p x C_p`; `chi_(s,t)(a^i b^n c^l) = w^(si + tn)`.
    Center,
}

/// The quotient of the Heisenberg action by `N` and all characters of `G/N`
/// as explicit tables.
pub fn heisenberg_quotient(
    module: &Module,
    kind: QuotientKind,
) -> Result<(Quotient<'_>, Vec<Character>), InvariantError> {
    if !module.is_heisenberg() {
        return Err(InvariantError::Precondition(format!("{} is not a Heisenberg module", module.label())));
    }
    let group = module.group();
    let p = module.p();
    let gen = |n: &str| group.generator(n).expect("Heisenberg generators").clone();
    let (a, b, c) = (gen("a"), gen("b"), gen("c"));
    // coordinates (i, n, l) of every element as a^i b^n c^l; if the action is
    // not faithful several triples share an element and must agree
    let mut coords: Vec<Option<(u32, u32)>> = vec![None; group.order()];
    let mut ai = MonomialMatrix::identity(p, module.nvars());
    for i in 0..p {
        let mut bn = ai.clone();
        for n in 0..p {
            let mut cl = bn.clone();
            for _ in 0..p {
                let g = group.index_of(&cl).expect("closed group");
                coords[g].get_or_insert((i, n));
                cl = cl.compose(&c);
            }
            bn = bn.compose(&b);
        }
        ai = ai.compose(&a);
    }
    let coords: Vec<(u32, u32)> = coords.into_iter().map(|c| c.expect("a, b, c generate")).collect();
    let names: &[&str] = match kind {
        QuotientKind::A => &["a", "c"],
        QuotientKind::Center => &["c"],
    };
    let quotient = Quotient::new(group, group.subgroup(names)?)?;
    let chars: Vec<Character> = match kind {
        QuotientKind::A => (0..p)
            .map(|j| Character::new(format!("chi_{j}"), p, coords.iter().map(|&(_, n)| j * n).collect()))
            .collect(),
        QuotientKind::Center => (0..p)
            .flat_map(|s| (0..p).map(move |t| (s, t)))
            .map(|(s, t)| {
                Character::new(format!("chi_({s},{t})"), p, coords.iter().map(|&(i, n)| s * i + t * n).collect())
            })
            .collect(),
    };
    // unfaithful actions can identify elements; drop tables that are not
    // well defined characters
    let chars = chars.into_iter().filter(|c| c.is_homomorphism(group) && c.is_trivial_on(&quotient)).collect();
    Ok((quotient, chars))
}

/// Polarization `Delta_i^{s,t}(f) = sum_k x_{i,k}^(t) d/dx_{i,k}^(s) f`.
pub fn polarize(module: &Module, f: &Polynomial, block: u32, s: u32, t: u32) -> Result<Polynomial, InvariantError> {
    let p = module.p();
    let index = |copy: u32, k: u32| {
        module.var_index(&VariableId::V { block, copy, k }).ok_or_else(|| {
            InvariantError::Precondition(format!("module has no copy {copy} of block {block}"))
        })
    };
    let mut out = Polynomial::zero(p, module.nvars());
    for k in 0..p {
        let (src, dst) = (index(s, k)?, index(t, k)?);
        let d = f.derivative(src);
        if !d.is_zero() {
            out = out.add(&d.mul_monomial(&crate::action::Monomial::var(module.nvars(), dst)));
        }
    }
    Ok(out)
}

/// `u_1 ... u_{p-1} - u_1^g u_2^(g^-1) u_3 ... u_{p-1}` for `g = b^n`.
pub fn trukk_difference(module: &Module, us: &[Polynomial], n: u32) -> Result<Polynomial, InvariantError> {
    let p = module.p();
    if !module.is_heisenberg() {
        return Err(InvariantError::Precondition(format!("{} is not a Heisenberg module", module.label())));
    }
    if us.len() != (p - 1) as usize {
        return Err(InvariantError::Precondition(format!("expected {} factors, got {}", p - 1, us.len())));
    }
    let group = module.group();
    let (a, c) = (group.generator("a").expect("a"), group.generator("c").expect("c"));
    for (i, u) in us.iter().enumerate() {
        if u.is_zero() || u.terms().keys().any(|m| m.is_one()) {
            return Err(InvariantError::Precondition(format!("factor {} has a constant term", i + 1)));
        }
        if act(a, u) != *u || act(c, u) != *u {
            return Err(InvariantError::Precondition(format!("factor {} is not A-invariant", i + 1)));
        }
    }
    let g = group.generator("b").expect("b").pow(n % p);
    let product = |fs: &mut dyn Iterator<Item = Polynomial>| fs.fold(module.one(), |acc, f| acc.mul(&f));
    let left = product(&mut us.iter().cloned());
    let moved = [act(&g, &us[0]), act(&g.inverse(), &us[1])];
    let right = product(&mut moved.into_iter().chain(us[2..].iter().cloned()));
    Ok(left.sub(&right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{build_module, DEFAULT_GROUP_BUDGET};
    use crate::invariants::InvariantEngine;

    fn v_omega() -> Module {
        build_module(&"p=3;V=[1:1]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap()
    }

    #[test]
    fn reynolds_examples() {
        let m = v_omega();
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        let xyz = m.poly(m.monomial(&[(x, 1), (y, 1), (z, 1)]));
        assert_eq!(reynolds(m.group(), &xyz), xyz);
        assert!(reynolds(m.group(), &m.poly(m.monomial(&[(x, 1)]))).is_zero());
    }

    #[test]
    fn transfer_examples() {
        let m = v_omega();
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        let (q, chars) = heisenberg_quotient(&m, QuotientKind::A).unwrap();
        assert_eq!(q.index(), 3);
        assert_eq!(chars.len(), 3);
        let x3 = m.poly(m.monomial(&[(x, 3)]));
        let sym = x3.add(&m.poly(m.monomial(&[(y, 3)]))).add(&m.poly(m.monomial(&[(z, 3)])));
        assert_eq!(q.transfer(&x3).unwrap(), sym.scale(&crate::invariants::reciprocal(3, 3)));
        let xyz = m.poly(m.monomial(&[(x, 1), (y, 1), (z, 1)]));
        assert_eq!(q.transfer(&xyz).unwrap(), xyz);
        assert!(q.transfer(&m.poly(m.monomial(&[(x, 2), (y, 1)]))).is_err());
        // x^6 y^3 transfers to a non-symmetric invariant
        let t = q.transfer(&m.poly(m.monomial(&[(x, 6), (y, 3)]))).unwrap();
        let swapped = m.monomial(&[(y, 6), (x, 3)]);
        assert!(t.coefficient(&swapped).is_none());
        assert!(m.group().fixes(&t));

        let mut total = m.one().sub(&m.one());
        for chi in &chars {
            total = total.add(&q.semi_projection(chi, &x3).unwrap());
        }
        assert_eq!(total, x3);
        assert_eq!(q.semi_projection(&chars[0], &x3).unwrap(), q.transfer(&x3).unwrap());
    }

    #[test]
    fn center_quotient_characters() {
        let m = v_omega();
        let (q, chars) = heisenberg_quotient(&m, QuotientKind::Center).unwrap();
        assert_eq!(q.index(), 9);
        assert_eq!(chars.len(), 9);
        assert!(chars.iter().all(|c| c.is_homomorphism(m.group())));
    }

    #[test]
    fn polarization_examples() {
        let m = build_module(&"p=3;V=[1:3]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
        let x1 = m.poly(m.monomial(&[(m.x(1, 0, 1).unwrap(), 1)]));
        let x2 = m.poly(m.monomial(&[(m.x(1, 0, 2).unwrap(), 1)]));
        assert_eq!(polarize(&m, &x1, 1, 1, 2).unwrap(), x2);
        let f = m.poly(m.monomial(&[(m.x(1, 0, 1).unwrap(), 2), (m.x(1, 2, 1).unwrap(), 1), (m.x(1, 1, 2).unwrap(), 1)]));
        let three = crate::cyclotomic::Cyclotomic::from_integer(3, 3).unwrap();
        assert_eq!(polarize(&m, &f, 1, 1, 1).unwrap(), f.scale(&three));
        assert!(polarize(&m, &f, 1, 1, 4).is_err());
    }

    #[test]
    fn trukk_examples() {
        let m = v_omega();
        let e = InvariantEngine::new(&m);
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        let x3 = m.poly(m.monomial(&[(x, 3)]));
        let y3 = m.poly(m.monomial(&[(y, 3)]));
        let xyz = m.poly(m.monomial(&[(x, 1), (y, 1), (z, 1)]));
        let d = trukk_difference(&m, &[x3.clone(), xyz.clone()], 1).unwrap();
        let z3 = m.poly(m.monomial(&[(z, 3)]));
        assert_eq!(d, x3.sub(&z3).mul(&xyz));
        assert!(e.in_hilbert_ideal(&d).unwrap());
        let d = trukk_difference(&m, &[x3.clone(), y3.clone()], 1).unwrap();
        assert_eq!(d, x3.mul(&y3).sub(&z3.mul(&z3)));
        assert!(e.in_hilbert_ideal(&d).unwrap());
        assert!(trukk_difference(&m, &[x3.clone(), y3.clone()], 0).unwrap().is_zero());
        assert!(trukk_difference(&m, &[x3.clone()], 1).is_err());
    }
}
