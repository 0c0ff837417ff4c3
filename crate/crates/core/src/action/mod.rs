//! Finite groups acting by monomial (generalized permutation) matrices on a
//! named set of variables, with builders for the Heisenberg group `H_p` and
//! its modules and for diagonal actions of `C_p^r`.
//!
//! Group elements act on the coordinate ring from the right, `f^g(v) = f(g.v)`.
//! A [`MonomialMatrix`] records the action on variables directly:
//! `x_v^g = w^e(v) x_pi(v)`, so `f^(gh) = (f^g)^h`.

mod poly;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupElement, Sequence};
use crate::cyclotomic::Cyclotomic;

pub use poly::{count_monomials, monomials_of_degree, Monomial, Polynomial};

/// Default cap on the size of a closed matrix group.
pub const DEFAULT_GROUP_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid module: {0}")]
    InvalidSpec(String),
    #[error("generators act on {0} and {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("generator {0} does not permute the variables")]
    NotInvertible(String),
    #[error("group closure exceeds {limit} elements")]
    BudgetExceeded { limit: usize },
    #[error("relation {0} fails in the constructed group")]
    Relation(String),
    #[error("{0}")]
    Precondition(String),
}

/// Names of the coordinate functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    /// Coordinate of a one-dimensional `H_p`-module: `a` acts by `w^alpha`,
    /// `b` by `w^beta`, `c` trivially.
    U { alpha: u32, beta: u32, copy: u32 },
    /// `x_{i,k}^{(j)}`: coordinate `k` of copy `j` of `V_{w^i}`.
    V { block: u32, copy: u32, k: u32 },
    /// Coordinate on which `C_p^r` acts through the character `chi`.
    Char { chi: Vec<u32>, copy: u32 },
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::U { alpha, beta, copy } => write!(f, "u[{alpha},{beta}]^({copy})"),
            VariableId::V { block, copy, k } => write!(f, "x[{block},{k}]^({copy})"),
            VariableId::Char { chi, copy } => {
                let c: Vec<String> = chi.iter().map(u32::to_string).collect();
                write!(f, "t[{}]^({copy})", c.join(","))
            }
        }
    }
}

/// An `H_p`-module `W = U + V_1 + ... + V_{p-1}`: the one-dimensional
/// summands of `U` by their characters `(alpha, beta)` and `n_i` copies of
/// `V_{w^i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleSpec {
    p: u32,
    u_chars: Vec<(u32, u32)>,
    n: Vec<u32>,
}

impl ModuleSpec {
    /// `n[i - 1]` is the number of copies of `V_{w^i}`; missing entries are 0.
    pub fn new(p: u32, mut u_chars: Vec<(u32, u32)>, mut n: Vec<u32>) -> Result<Self, ActionError> {
        if !crate::is_prime(p as u64) {
            return Err(ActionError::NotPrime(p));
        }
        if n.len() > (p - 1) as usize {
            return Err(ActionError::InvalidSpec(format!(
                "{} isotypic blocks given, at most {} exist for p = {p}",
                n.len(),
                p - 1
            )));
        }
        n.resize((p - 1) as usize, 0);
        if let Some(&(a, b)) = u_chars.iter().find(|&&(a, b)| a >= p || b >= p) {
            return Err(ActionError::InvalidSpec(format!("character ({a},{b}) out of range mod {p}")));
        }
        u_chars.sort_unstable();
        let spec = ModuleSpec { p, u_chars, n };
        if spec.dimension() == 0 {
            return Err(ActionError::InvalidSpec("module has dimension 0".into()));
        }
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn u_chars(&self) -> &[(u32, u32)] {
        &self.u_chars
    }

    /// Multiplicity `n_i` of `V_{w^i}`, `1 <= i <= p - 1`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.n[(i - 1) as usize]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.n
    }

    pub fn dimension(&self) -> usize {
        self.u_chars.len() + self.p as usize * self.n.iter().sum::<u32>() as usize
    }

    /// Variables in canonical order: `U` first, then `(i, j, k)` ascending.
    pub fn variables(&self) -> Vec<VariableId> {
        let mut out = Vec::with_capacity(self.dimension());
        let mut seen: HashMap<(u32, u32), u32> = HashMap::new();
        for &(alpha, beta) in &self.u_chars {
            let copy = seen.entry((alpha, beta)).or_insert(0);
            *copy += 1;
            out.push(VariableId::U { alpha, beta, copy: *copy });
        }
        for block in 1..self.p {
            for copy in 1..=self.multiplicity(block) {
                for k in 0..self.p {
                    out.push(VariableId::V { block, copy, k });
                }
            }
        }
        out
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.p)?;
        if !self.u_chars.is_empty() {
            let u: Vec<String> = self.u_chars.iter().map(|(a, b)| format!("({a},{b})")).collect();
            write!(f, ";U=[{}]", u.join(","))?;
        }
        let v: Vec<String> = self
            .n
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, k)| format!("{}:{k}", i + 1))
            .collect();
        write!(f, ";V=[{}]", v.join(","))
    }
}

/// Diagonal action of `C_p^r` on one coordinate per listed character.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianSpec {
    p: u32,
    rank: usize,
    chars: Vec<Vec<u32>>,
}

impl AbelianSpec {
    pub fn new(p: u32, rank: usize, chars: Vec<Vec<u32>>) -> Result<Self, ActionError> {
        if !crate::is_prime(p as u64) {
            return Err(ActionError::NotPrime(p));
        }
        if chars.is_empty() {
            return Err(ActionError::InvalidSpec("no characters given".into()));
        }
        for chi in &chars {
            if chi.len() != rank || chi.iter().any(|&c| c >= p) {
                return Err(ActionError::InvalidSpec(format!("character {chi:?} is not in (Z/{p})^{rank}")));
            }
        }
        Ok(AbelianSpec { p, rank, chars })
    }

    /// One coordinate for every nontrivial character of `C_p^r`.
    pub fn all_nontrivial(p: u32, rank: usize) -> Result<Self, ActionError> {
        let group = AbelianGroup::elementary(p, rank).map_err(|e| ActionError::InvalidSpec(e.to_string()))?;
        let chars = group.elements().filter(|g| !g.is_zero()).map(|g| g.coords().to_vec()).collect();
        Self::new(p, rank, chars)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn chars(&self) -> &[Vec<u32>] {
        &self.chars
    }

    fn is_all_nontrivial(&self) -> bool {
        Self::all_nontrivial(self.p, self.rank).is_ok_and(|all| all.chars == self.chars)
    }
}

impl fmt::Display for AbelianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};r={};X=", self.p, self.rank)?;
        if self.is_all_nontrivial() {
            return write!(f, "all");
        }
        let x: Vec<String> = self
            .chars
            .iter()
            .map(|c| format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", x.join(","))
    }
}

/// Text form of a module, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleDescriptor {
    Heisenberg(ModuleSpec),
    Abelian(AbelianSpec),
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescriptor::Heisenberg(s) => s.fmt(f),
            ModuleDescriptor::Abelian(s) => s.fmt(f),
        }
    }
}

impl FromStr for ModuleDescriptor {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::module(s)
    }
}

impl FromStr for ModuleSpec {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match crate::parse::module(s)? {
            ModuleDescriptor::Heisenberg(spec) => Ok(spec),
            ModuleDescriptor::Abelian(_) => Err(crate::parse::ParseError::new(s, 0, "expected a Heisenberg module")),
        }
    }
}

impl Serialize for ModuleDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Generalized permutation matrix acting on variables from the right:
/// `x_v^g = w^exps[v] * x_perm[v]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    p: u32,
    perm: Vec<u32>,
    exps: Vec<u32>,
}

impl MonomialMatrix {
    pub fn new(p: u32, perm: Vec<u32>, exps: Vec<u32>) -> Result<Self, ActionError> {
        if perm.len() != exps.len() {
            return Err(ActionError::DimensionMismatch(perm.len(), exps.len()));
        }
        let mut seen = vec![false; perm.len()];
        for &t in &perm {
            if t as usize >= perm.len() || std::mem::replace(&mut seen[t as usize], true) {
                return Err(ActionError::NotInvertible(format!("{perm:?}")));
            }
        }
        let exps = exps.into_iter().map(|e| e % p).collect();
        Ok(MonomialMatrix { p, perm, exps })
    }

    pub fn identity(p: u32, n: usize) -> Self {
        MonomialMatrix { p, perm: (0..n as u32).collect(), exps: vec![0; n] }
    }

    /// Diagonal matrix scaling `x_v` by `w^exps[v]`.
    pub fn diagonal(p: u32, exps: Vec<u32>) -> Self {
        let n = exps.len();
        MonomialMatrix { p, perm: (0..n as u32).collect(), exps: exps.into_iter().map(|e| e % p).collect() }
    }

    pub fn dimension(&self) -> usize {
        self.perm.len()
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    /// Target variable and root-of-unity exponent for `x_v^g`.
    pub fn image(&self, v: usize) -> (usize, u32) {
        (self.perm[v] as usize, self.exps[v])
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &t)| i as u32 == t)
    }

    /// The product `gh`, acting as `g` then `h`: `x^(gh) = (x^g)^h`.
    pub fn compose(&self, h: &MonomialMatrix) -> MonomialMatrix {
        let perm = self.perm.iter().map(|&t| h.perm[t as usize]).collect();
        let exps = self
            .perm
            .iter()
            .zip(&self.exps)
            .map(|(&t, &e)| (e + h.exps[t as usize]) % self.p)
            .collect();
        MonomialMatrix { p: self.p, perm, exps }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for v in 0..n {
            let t = self.perm[v] as usize;
            perm[t] = v as u32;
            exps[t] = (self.p - self.exps[v]) % self.p;
        }
        MonomialMatrix { p: self.p, perm, exps }
    }

    pub fn pow(&self, n: u32) -> MonomialMatrix {
        let mut out = Self::identity(self.p, self.dimension());
        for _ in 0..n {
            out = out.compose(self);
        }
        out
    }

    /// `m^g = w^e * m'`, returned as `(e, m')`.
    pub fn apply_monomial(&self, m: &Monomial) -> (u32, Monomial) {
        let mut exps = vec![0u16; m.nvars()];
        let mut e = 0u64;
        for (v, k) in m.support() {
            exps[self.perm[v] as usize] += k;
            e += self.exps[v] as u64 * k as u64;
        }
        ((e % self.p as u64) as u32, Monomial::from_exponents(exps))
    }
}

/// `f^g`: substitutes `w^e(v) x_pi(v)` for every variable `x_v`.
pub fn act(g: &MonomialMatrix, f: &Polynomial) -> Polynomial {
    let p = f.conductor();
    let mut out = Polynomial::zero(p, f.nvars());
    for (m, c) in f.terms() {
        let (e, image) = g.apply_monomial(m);
        out.add_term(image, &c.mul_root(e));
    }
    out
}

/// A finite group given extensionally as a closed set of monomial matrices.
#[derive(Debug, Clone)]
pub struct GroupAction {
    p: u32,
    elements: Vec<MonomialMatrix>,
    index: HashMap<MonomialMatrix, usize>,
    generators: Vec<(String, usize)>,
}

impl GroupAction {
    /// Closure of `generators` under composition (breadth-first). Element 0
    /// is the identity.
    pub fn close(
        p: u32,
        nvars: usize,
        generators: Vec<(String, MonomialMatrix)>,
        budget: usize,
    ) -> Result<Self, ActionError> {
        for (name, g) in &generators {
            if g.dimension() != nvars {
                return Err(ActionError::DimensionMismatch(nvars, g.dimension()));
            }
            if g.p != p {
                return Err(ActionError::Precondition(format!("generator {name} uses roots of unity of order {}", g.p)));
            }
        }
        let id = MonomialMatrix::identity(p, nvars);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (_, g) in &generators {
                let h = elements[i].compose(g);
                if !index.contains_key(&h) {
                    if elements.len() >= budget {
                        return Err(ActionError::BudgetExceeded { limit: budget });
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let generators = generators
            .into_iter()
            .map(|(name, g)| {
                let i = index[&g];
                (name, i)
            })
            .collect();
        Ok(GroupAction { p, elements, index, generators })
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MonomialMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MonomialMatrix {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, g: &MonomialMatrix) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|(n, _)| n.as_str())
    }

    pub fn generator(&self, name: &str) -> Option<&MonomialMatrix> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, i)| &self.elements[*i])
    }

    /// Index of `g_i g_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// Subgroup generated by the named generators.
    pub fn subgroup(&self, names: &[&str]) -> Result<GroupAction, ActionError> {
        let gens = names
            .iter()
            .map(|&n| {
                self.generator(n)
                    .cloned()
                    .map(|g| (n.to_string(), g))
                    .ok_or_else(|| ActionError::Precondition(format!("no generator named {n}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let nvars = self.elements[0].dimension();
        GroupAction::close(self.p, nvars, gens, self.order().max(1))
    }

    /// True when `f^g = f` for every generator.
    pub fn fixes(&self, f: &Polynomial) -> bool {
        self.generators.iter().all(|(_, i)| act(&self.elements[*i], f) == *f)
    }
}

/// A group acting on the coordinate ring of a module.
#[derive(Debug, Clone)]
pub struct Module {
    descriptor: ModuleDescriptor,
    variables: Vec<VariableId>,
    group: GroupAction,
    restriction: Option<String>,
}

impl Module {
    pub fn descriptor(&self) -> &ModuleDescriptor {
        &self.descriptor
    }

    /// Human-readable name including any restriction to a subgroup.
    pub fn label(&self) -> String {
        match &self.restriction {
            Some(r) => format!("{}|<{r}>", self.descriptor),
            None => self.descriptor.to_string(),
        }
    }

    pub fn p(&self) -> u32 {
        self.group.p
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn group(&self) -> &GroupAction {
        &self.group
    }

    pub fn heisenberg_spec(&self) -> Option<&ModuleSpec> {
        match (&self.descriptor, &self.restriction) {
            (ModuleDescriptor::Heisenberg(s), _) => Some(s),
            _ => None,
        }
    }

    /// True for the full `H_p` action (not a restriction).
    pub fn is_heisenberg(&self) -> bool {
        self.heisenberg_spec().is_some() && self.restriction.is_none()
    }

    pub fn var_index(&self, id: &VariableId) -> Option<usize> {
        self.variables.iter().position(|v| v == id)
    }

    /// Index of `x_{block,k}^{(copy)}`.
    pub fn x(&self, block: u32, k: u32, copy: u32) -> Option<usize> {
        self.var_index(&VariableId::V { block, copy, k: k % self.p() })
    }

    /// The same module with the group replaced by the subgroup generated by
    /// the named generators.
    pub fn restrict(&self, names: &[&str]) -> Result<Module, ActionError> {
        Ok(Module {
            descriptor: self.descriptor.clone(),
            variables: self.variables.clone(),
            group: self.group.subgroup(names)?,
            restriction: Some(names.join(",")),
        })
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::from_monomial(self.p(), Monomial::one(self.nvars()))
    }

    pub fn monomial(&self, pairs: &[(usize, u16)]) -> Monomial {
        Monomial::from_pairs(self.nvars(), pairs)
    }

    pub fn poly(&self, m: Monomial) -> Polynomial {
        Polynomial::from_monomial(self.p(), m)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.support()
            .map(|(v, e)| if e == 1 { self.variables[v].to_string() } else { format!("{}^{e}", self.variables[v]) })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn format_poly(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in f.terms().iter().rev() {
            let coeff = c.to_string();
            let term = if m.is_one() {
                coeff
            } else if c.is_one() {
                self.format_monomial(m)
            } else if (-c).is_one() {
                format!("-{}", self.format_monomial(m))
            } else if coeff.contains([' ', '+']) || coeff[1..].contains('-') {
                format!("({coeff})*{}", self.format_monomial(m))
            } else {
                format!("{coeff}*{}", self.format_monomial(m))
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out = format!("{out} - {rest}");
            } else {
                out = format!("{out} + {term}");
            }
        }
        out
    }

    fn require_heisenberg_vars(&self) -> Result<&ModuleSpec, ActionError> {
        self.heisenberg_spec()
            .ok_or_else(|| ActionError::Precondition(format!("{} is not a Heisenberg module", self.label())))
    }

    /// The group `Z/p x Z/p` of weights `(phi_a, phi_c)`.
    pub fn weight_group(&self) -> AbelianGroup {
        AbelianGroup::elementary(self.p(), 2).expect("p is a small prime")
    }

    /// `phi(x_{i,k}) = (ik, i)`; a `U`-coordinate with character
    /// `(alpha, beta)` has weight `(alpha, 0)`.
    pub fn variable_weight(&self, v: usize) -> Result<(u32, u32), ActionError> {
        self.require_heisenberg_vars()?;
        let p = self.p();
        Ok(match &self.variables[v] {
            VariableId::U { alpha, .. } => (*alpha, 0),
            VariableId::V { block, k, .. } => ((block * k) % p, *block),
            VariableId::Char { .. } => unreachable!("Heisenberg modules have no character coordinates"),
        })
    }

    /// `phi(m) = sigma(Phi(m))`.
    pub fn weight(&self, m: &Monomial) -> Result<GroupElement, ActionError> {
        let p = self.p() as u64;
        let (mut a, mut c) = (0u64, 0u64);
        for (v, e) in m.support() {
            let (wa, wc) = self.variable_weight(v)?;
            a += wa as u64 * e as u64;
            c += wc as u64 * e as u64;
        }
        Ok(self.weight_group().element(&[(a % p) as u32, (c % p) as u32]).expect("reduced mod p"))
    }

    /// `Phi(m)`: the multiset of variable weights.
    pub fn weight_sequence(&self, m: &Monomial) -> Result<Sequence, ActionError> {
        let g = self.weight_group();
        let mut codes = Vec::with_capacity(m.degree() as usize);
        for v in m.variables() {
            let (a, c) = self.variable_weight(v)?;
            codes.push(g.encode(&g.element(&[a, c]).expect("reduced mod p")));
        }
        Ok(Sequence::from_codes(&g, codes))
    }

    /// A monomial is `A`-invariant iff its weight vanishes.
    pub fn is_a_invariant(&self, m: &Monomial) -> Result<bool, ActionError> {
        Ok(self.weight(m)?.is_zero())
    }

    /// `x^(b^n)` for a `V`-coordinate: `x_{i,k} -> x_{i,k-n}`.
    pub fn shift(&self, v: usize, n: u32) -> Result<usize, ActionError> {
        self.require_heisenberg_vars()?;
        let p = self.p();
        match self.variables[v] {
            VariableId::V { block, copy, k } => {
                Ok(self.x(block, (k + p - n % p) % p, copy).expect("same block and copy"))
            }
            _ => Err(ActionError::Precondition(format!("{} is not a V-coordinate", self.variables[v]))),
        }
    }

    /// `m^(b^n)` for a monomial in the `V`-coordinates; `b` permutes those
    /// without scalars.
    pub fn shift_monomial(&self, m: &Monomial, n: u32) -> Result<Monomial, ActionError> {
        let mut exps = vec![0u16; self.nvars()];
        for (v, e) in m.support() {
            exps[self.shift(v, n)?] += e;
        }
        Ok(Monomial::from_exponents(exps))
    }

    /// `(block, copy)` of a `V`-coordinate.
    pub fn block_of(&self, v: usize) -> Option<(u32, u32)> {
        match self.variables[v] {
            VariableId::V { block, copy, .. } => Some((block, copy)),
            _ => None,
        }
    }

    fn block_degrees(&self, m: &Monomial) -> Result<Vec<((u32, u32), u32)>, ActionError> {
        let mut out: Vec<((u32, u32), u32)> = Vec::new();
        for (v, e) in m.support() {
            let key = self.block_of(v).ok_or_else(|| {
                ActionError::Precondition(format!(
                    "homologous is defined on V-coordinates only; {} is not one",
                    self.variables[v]
                ))
            })?;
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, d)) => *d += e as u32,
                None => out.push((key, e as u32)),
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `u ~ v`: same degree in every block `(i, j)`.
    pub fn homologous(&self, u: &Monomial, v: &Monomial) -> Result<bool, ActionError> {
        self.require_heisenberg_vars()?;
        Ok(self.block_degrees(u)? == self.block_degrees(v)?)
    }

    /// Monomials of degree `<= dmax` that are `A`-invariant and not a product
    /// of two `A`-invariant monomials of positive degree.
    pub fn irreducible_a_invariants(&self, dmax: u32) -> Result<Vec<Monomial>, ActionError> {
        let mut out = Vec::new();
        for d in 1..=dmax {
            for m in monomials_of_degree(self.nvars(), d) {
                if !self.is_a_invariant(&m)? {
                    continue;
                }
                let mut reducible = false;
                for w in m.divisors() {
                    if !w.is_one() && w != m && self.is_a_invariant(&w)? {
                        reducible = true;
                        break;
                    }
                }
                if !reducible {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }
}

/// The Heisenberg group `H_p = <a, b>`, `c = [a, b]`, acting on the module
/// described by `spec`:
///
/// - `x_{i,k}^a = w^(ik) x_{i,k}`, `x_{i,k}^b = x_{i,k-1}`, `x_{i,k}^c = w^i x_{i,k}`;
/// - a `U`-coordinate of character `(alpha, beta)` is scaled by `w^alpha`
///   under `a`, by `w^beta` under `b`, and fixed by `c`.
///
/// The defining relations are verified on the constructed matrices.
pub fn build_heisenberg_module(spec: &ModuleSpec, budget: usize) -> Result<Module, ActionError> {
    let p = spec.p;
    let variables = spec.variables();
    let n = variables.len();
    let find = |id: &VariableId| variables.iter().position(|v| v == id).expect("variable exists") as u32;
    let mut a_exp = vec![0; n];
    let mut b_perm: Vec<u32> = (0..n as u32).collect();
    let mut b_exp = vec![0; n];
    let mut c_exp = vec![0; n];
    for (v, id) in variables.iter().enumerate() {
        match *id {
            VariableId::U { alpha, beta, .. } => {
                a_exp[v] = alpha;
                b_exp[v] = beta;
            }
            VariableId::V { block, copy, k } => {
                a_exp[v] = block * k % p;
                c_exp[v] = block;
                b_perm[v] = find(&VariableId::V { block, copy, k: (k + p - 1) % p });
            }
            VariableId::Char { .. } => unreachable!(),
        }
    }
    let a = MonomialMatrix::diagonal(p, a_exp);
    let b = MonomialMatrix::new(p, b_perm, b_exp)?;
    let c = MonomialMatrix::diagonal(p, c_exp);
    check_heisenberg_relations(&a, &b, &c)?;
    let group = GroupAction::close(
        p,
        n,
        vec![("a".into(), a), ("b".into(), b), ("c".into(), c)],
        budget,
    )?;
    let p3 = (p as usize).pow(3);
    if p3 % group.order() != 0 {
        return Err(ActionError::Relation(format!("group order {} does not divide p^3", group.order())));
    }
    if spec.n.iter().any(|&k| k > 0) && group.order() != p3 {
        return Err(ActionError::Relation(format!("faithful module but group order {}", group.order())));
    }
    Ok(Module { descriptor: ModuleDescriptor::Heisenberg(spec.clone()), variables, group, restriction: None })
}

/// `a^p = b^p = c^p = 1`, `a^-1 b^-1 a b = c`, `c` central.
fn check_heisenberg_relations(a: &MonomialMatrix, b: &MonomialMatrix, c: &MonomialMatrix) -> Result<(), ActionError> {
    let p = a.p;
    for (name, g) in [("a^p = 1", a), ("b^p = 1", b), ("c^p = 1", c)] {
        if !g.pow(p).is_identity() {
            return Err(ActionError::Relation(name.into()));
        }
    }
    let comm = a.inverse().compose(&b.inverse()).compose(a).compose(b);
    if comm != *c {
        return Err(ActionError::Relation("[a,b] = c".into()));
    }
    if a.compose(c) != c.compose(a) || b.compose(c) != c.compose(b) {
        return Err(ActionError::Relation("c central".into()));
    }
    Ok(())
}

/// `C_p^r` acting diagonally: generator `g_s` scales the coordinate of
/// character `chi` by `w^chi_s`.
pub fn build_abelian_module(spec: &AbelianSpec, budget: usize) -> Result<Module, ActionError> {
    let p = spec.p;
    let mut copies: HashMap<&Vec<u32>, u32> = HashMap::new();
    let variables: Vec<VariableId> = spec
        .chars
        .iter()
        .map(|chi| {
            let copy = copies.entry(chi).or_insert(0);
            *copy += 1;
            VariableId::Char { chi: chi.clone(), copy: *copy }
        })
        .collect();
    let gens = (0..spec.rank)
        .map(|s| {
            let exps = spec.chars.iter().map(|chi| chi[s]).collect();
            (format!("g{}", s + 1), MonomialMatrix::diagonal(p, exps))
        })
        .collect();
    let group = GroupAction::close(p, variables.len(), gens, budget)?;
    Ok(Module { descriptor: ModuleDescriptor::Abelian(spec.clone()), variables, group, restriction: None })
}

/// Builds either kind of module from its descriptor.
pub fn build_module(descriptor: &ModuleDescriptor, budget: usize) -> Result<Module, ActionError> {
    match descriptor {
        ModuleDescriptor::Heisenberg(s) => build_heisenberg_module(s, budget),
        ModuleDescriptor::Abelian(s) => build_abelian_module(s, budget),
    }
}

/// `w^e` in `Q(w)` for the module's conductor.
pub fn root(p: u32, e: u32) -> Cyclotomic {
    Cyclotomic::root_unchecked(p, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_omega() -> Module {
        build_heisenberg_module(&ModuleSpec::new(3, vec![], vec![1]).unwrap(), DEFAULT_GROUP_BUDGET).unwrap()
    }

    #[test]
    fn heisenberg_order_and_action() {
        let m = v_omega();
        assert_eq!(m.group().order(), 27);
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        let a = m.group().generator("a").unwrap();
        let b = m.group().generator("b").unwrap();
        let c = m.group().generator("c").unwrap();
        assert_eq!(b.image(y), (x, 0));
        assert_eq!(a.image(z), (z, 2));
        assert_eq!(c.image(x), (x, 1));
        let xyz = m.poly(m.monomial(&[(x, 1), (y, 1), (z, 1)]));
        assert_eq!(act(b, &xyz), xyz);
        let x3 = m.poly(m.monomial(&[(x, 3)]));
        assert_eq!(act(a, &x3), x3);
        assert_eq!(act(&MonomialMatrix::identity(3, 3), &x3), x3);
    }

    #[test]
    fn close_small_groups() {
        let id = GroupAction::close(3, 2, vec![("e".into(), MonomialMatrix::identity(3, 2))], 10).unwrap();
        assert_eq!(id.order(), 1);
        let g = GroupAction::close(3, 1, vec![("g".into(), MonomialMatrix::diagonal(3, vec![1]))], 10).unwrap();
        assert_eq!(g.order(), 3);
        let err = GroupAction::close(3, 1, vec![("g".into(), MonomialMatrix::diagonal(3, vec![1]))], 2);
        assert_eq!(err.unwrap_err(), ActionError::BudgetExceeded { limit: 2 });
        assert!(matches!(MonomialMatrix::new(3, vec![0, 0], vec![0, 0]), Err(ActionError::NotInvertible(_))));
    }

    #[test]
    fn heisenberg_p5_and_unfaithful() {
        let spec = ModuleSpec::new(5, vec![(1, 2)], vec![0, 1]).unwrap();
        let m = build_heisenberg_module(&spec, DEFAULT_GROUP_BUDGET).unwrap();
        assert_eq!(m.group().order(), 125);
        let u_only = ModuleSpec::new(3, vec![(1, 0), (0, 1)], vec![]).unwrap();
        assert_eq!(build_heisenberg_module(&u_only, DEFAULT_GROUP_BUDGET).unwrap().group().order(), 9);
    }

    #[test]
    fn weights() {
        let m = v_omega();
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        assert_eq!(m.variable_weight(y).unwrap(), (1, 1));
        let xyz = m.monomial(&[(x, 1), (y, 1), (z, 1)]);
        assert!(m.weight(&xyz).unwrap().is_zero());
        assert!(m.is_a_invariant(&m.monomial(&[(z, 3)])).unwrap());
        let x2y = m.monomial(&[(x, 2), (y, 1)]);
        assert_eq!(m.weight(&x2y).unwrap().coords(), &[1, 0]);
        assert!(!m.is_a_invariant(&x2y).unwrap());
        assert!(m.is_a_invariant(&Monomial::one(3)).unwrap());
        assert_eq!(m.weight_sequence(&xyz).unwrap().len(), 3);

        let two = build_heisenberg_module(&ModuleSpec::new(3, vec![], vec![0, 1]).unwrap(), 1000).unwrap();
        assert_eq!(two.variable_weight(two.x(2, 2, 1).unwrap()).unwrap(), (1, 2));
    }

    #[test]
    fn irreducible_a_invariants_of_v_omega() {
        let m = v_omega();
        let irr = m.irreducible_a_invariants(3).unwrap();
        let names: Vec<String> = irr.iter().map(|u| m.format_monomial(u)).collect();
        assert_eq!(names.len(), 4, "{names:?}");
        assert!(m.irreducible_a_invariants(8).unwrap().len() == 4);
    }

    #[test]
    fn homologous_examples() {
        let m = v_omega();
        let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
        let x3 = m.monomial(&[(x, 3)]);
        assert!(m.homologous(&x3, &m.monomial(&[(x, 1), (y, 1), (z, 1)])).unwrap());
        assert!(m.homologous(&x3, &m.monomial(&[(x, 2), (y, 1)])).unwrap());
        let two = build_heisenberg_module(&ModuleSpec::new(3, vec![], vec![2]).unwrap(), 1000).unwrap();
        let a = two.monomial(&[(two.x(1, 0, 1).unwrap(), 1)]);
        let b = two.monomial(&[(two.x(1, 0, 2).unwrap(), 1)]);
        assert!(!two.homologous(&a, &b).unwrap());
        let with_u = build_heisenberg_module(&ModuleSpec::new(3, vec![(1, 0)], vec![1]).unwrap(), 1000).unwrap();
        let u = with_u.monomial(&[(0, 1)]);
        assert!(with_u.homologous(&u, &u).is_err());
    }

    #[test]
    fn abelian_module() {
        let spec = AbelianSpec::all_nontrivial(2, 3).unwrap();
        let m = build_abelian_module(&spec, 1000).unwrap();
        assert_eq!(m.nvars(), 7);
        assert_eq!(m.group().order(), 8);
        assert_eq!(spec.to_string(), "p=2;r=3;X=all");
        assert!(m.group().elements().iter().all(MonomialMatrix::is_diagonal));
    }

    #[test]
    fn restriction_to_a() {
        let m = v_omega().restrict(&["a", "c"]).unwrap();
        assert_eq!(m.group().order(), 9);
        assert_eq!(m.label(), "p=3;V=[1:1]|<a,c>");
    }

    #[test]
    fn display_formats() {
        let spec = ModuleSpec::new(3, vec![(1, 0)], vec![2]).unwrap();
        assert_eq!(spec.to_string(), "p=3;U=[(1,0)];V=[1:2]");
        let m = build_heisenberg_module(&spec, 1000).unwrap();
        assert_eq!(m.variables()[0].to_string(), "u[1,0]^(1)");
        assert_eq!(m.variables()[1].to_string(), "x[1,0]^(1)");
        let f = m.poly(m.monomial(&[(1, 2)])).sub(&m.poly(m.monomial(&[(2, 1), (0, 1)])));
        assert_eq!(m.format_poly(&f), "-u[1,0]^(1)*x[1,1]^(1) + x[1,0]^(1)^2");
    }
}
