//! The verification suite: every numeric claim the crate reproduces, as named
//! checks that run independently and report expected against computed values.
//!
//! Randomized checks draw from a ChaCha stream seeded by the suite seed and
//! the check id, so a report does not depend on the worker count or on which
//! other checks ran.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use regex::Regex;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{AbelianGroup, Sequence};
use crate::action::{act, build_module, root, Module, Monomial, Polynomial, DEFAULT_GROUP_BUDGET};
use crate::cyclotomic::Cyclotomic;
use crate::invariants::{
    heisenberg_quotient, homologous_rewrite, polarize, trukk_difference, InvariantEngine, InvariantError,
    QuotientKind,
};
use crate::zerosum::{
    cd_check, classify_maximal_zsf, davenport_k_search, davenport_search, find_short_zero_sum, nullak_factor,
    olson_formula, separ_factor, SearchBudget,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check id: no check matches {0:?}")]
    UnknownCheck(String),
    #[error("invalid filter: {0}")]
    Filter(#[from] regex::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// Result of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement being checked, in words.
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

/// Outcome of a check body: expected and computed values as text.
struct Outcome {
    expected: String,
    computed: String,
    pass: bool,
}

impl Outcome {
    fn compare<T: PartialEq + std::fmt::Debug>(expected: T, computed: T) -> Self {
        Outcome { pass: expected == computed, expected: format!("{expected:?}"), computed: format!("{computed:?}") }
    }

    /// A randomized or exhaustive trial count with its failures.
    fn trials(what: &str, total: usize, failures: &[String]) -> Self {
        let mut computed = format!("{} failures in {total} {what}", failures.len());
        if let Some(first) = failures.first() {
            computed.push_str(&format!("; first: {first}"));
        }
        Outcome { expected: format!("0 failures in {total} {what}"), computed, pass: failures.is_empty() }
    }
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<Outcome, String>;

struct Check {
    id: &'static str,
    claim: &'static str,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check { id: "davenport", claim: "D(A) of small p-groups agrees with Olson's formula", run: check_davenport },
    Check { id: "davenport-k", claim: "D_k(C_p x C_p) = kp + p - 1", run: check_davenport_k },
    Check {
        id: "lemma.zsf",
        claim: "the zero-sum free sequences of length p - 1 over C_p are the a^[p-1]",
        run: check_zsf,
    },
    Check {
        id: "lemma.eta",
        claim: "3p - 2 elements of C_p x C_p contain a zero-sum of length p or 2p",
        run: check_eta,
    },
    Check { id: "lemma.cd", claim: "|Sigma(S)| >= min(p, |S|) for S over C_p without 0", run: check_cd },
    Check {
        id: "lemma.separ",
        claim: "p - 1 zero-sum factors avoiding T, the first with full projected partial sums",
        run: check_separ,
    },
    Check {
        id: "lemma.nullak",
        claim: "|S| >= p^2 - 1 with v_0(S) >= p + 1 gives 2p - 1 zero-sum factors",
        run: check_nullak,
    },
    Check {
        id: "noether.h3",
        claim: "beta(H_3, V_w) = 9, swept to the bound p^2 + p - 1 = 11",
        run: check_h3_beta,
    },
    Check {
        id: "noether.obstruction",
        claim: "tau(x^6 y^3) is not generated in degree <= 8; irreducible A-invariants of degree <= 3",
        run: check_obstruction,
    },
    Check {
        id: "noether.polar",
        claim: "polarizations of x1y1z3, x1y2z2, x3y2z3 sum to 3 x1y2z3 + tau(x3y2z1)",
        run: check_polar,
    },
    Check { id: "noether.abelian", claim: "beta(A) = D(A) for diagonal abelian actions", run: check_abelian },
    Check {
        id: "noether.reduction",
        claim: "beta_3(C_3^2) = D_3 = 11 and beta(H_3, V_w) <= beta_3(A, V_w) <= 11",
        run: check_reduction,
    },
    Check {
        id: "property.trukk",
        claim: "u_1 u_2 - u_1^g u_2^(g^-1) lies in the Hilbert ideal",
        run: check_trukk,
    },
    Check {
        id: "property.b1",
        claim: "a product of D(C_3^2) = 5 positive-degree <c>-invariants lies in the Hilbert ideal",
        run: check_b1,
    },
    Check {
        id: "property.decomposition",
        claim: "an A-invariant is the sum of its semi-invariant components",
        run: check_decomposition,
    },
    Check {
        id: "property.polarization",
        claim: "polarization commutes with the group action and preserves the Hilbert ideal on products",
        run: check_polarization,
    },
    Check { id: "property.b-beta", claim: "beta <= b + 1 on every computed module", run: check_b_beta },
    Check {
        id: "property.rewrite",
        claim: "homologous rewriting keeps m - m' in the Hilbert ideal",
        run: check_rewrite,
    },
];

/// Every check id in report order.
pub fn check_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = CHECKS.iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids
}

fn check_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a of the id, mixed with the suite seed
    let h = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn run_check(check: &Check, seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, check.id));
    let start = Instant::now();
    let outcome = (check.run)(&mut rng).unwrap_or_else(|e| Outcome {
        expected: "no error".into(),
        computed: format!("error: {e}"),
        pass: false,
    });
    CheckRecord {
        id: check.id.to_string(),
        claim: check.claim.to_string(),
        expected: outcome.expected,
        computed: outcome.computed,
        pass: outcome.pass,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Runs the checks whose id fully matches `filter` (all when `None`) on a
/// pool of `jobs` workers (`0` = one per core). Failing checks are recorded,
/// never aborting the run; records are sorted by id.
pub fn run_suite(filter: Option<&str>, jobs: usize, seed: u64) -> Result<VerificationReport, VerifyError> {
    let selected: Vec<&Check> = match filter {
        None => CHECKS.iter().collect(),
        Some(pat) => {
            let re = Regex::new(&format!("^(?:{pat})$"))?;
            CHECKS.iter().filter(|c| re.is_match(c.id)).collect()
        }
    };
    if selected.is_empty() {
        return Err(VerifyError::UnknownCheck(filter.unwrap_or_default().to_string()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| VerifyError::Pool(e.to_string()))?;
    let mut records: Vec<CheckRecord> = pool.install(|| selected.par_iter().map(|c| run_check(c, seed)).collect());
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = records.iter().filter(|r| r.pass).count();
    let summary = Summary { checks: records.len(), passed, failed: records.len() - passed, pass: passed == records.len(), seed };
    Ok(VerificationReport { records, summary })
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group(orders: &[u32]) -> Result<AbelianGroup, String> {
    AbelianGroup::new(orders).map_err(err)
}

pub(crate) fn module(spec: &str) -> Result<Module, String> {
    build_module(&spec.parse().map_err(err)?, DEFAULT_GROUP_BUDGET).map_err(err)
}

fn random_sequence(rng: &mut ChaCha8Rng, g: &AbelianGroup, len: usize, codes: &[u32]) -> Sequence {
    Sequence::from_codes(g, (0..len).map(|_| *codes.choose(rng).expect("non-empty")))
}

fn check_davenport(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    // (p, exponents) for C_{p^n_1} x ... x C_{p^n_r}
    let cases: &[(u32, &[u32])] = &[
        (2, &[1]),
        (2, &[2]),
        (2, &[3]),
        (2, &[1, 1]),
        (2, &[1, 1, 1]),
        (2, &[1, 2]),
        (3, &[1]),
        (3, &[2]),
        (3, &[1, 1]),
        (5, &[1]),
        (5, &[1, 1]),
    ];
    let results: Vec<Result<(String, u64, u64), String>> = cases
        .par_iter()
        .map(|&(p, ns)| {
            let orders: Vec<u32> = ns.iter().map(|&n| p.pow(n)).collect();
            let g = group(&orders)?;
            let found = davenport_search(&g, &SearchBudget::default()).map_err(err)?.value as u64;
            Ok((format!("C({g})"), olson_formula(p as u64, ns).map_err(err)?, found))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let expected: Vec<String> = results.iter().map(|(g, e, _)| format!("D({g})={e}")).collect();
    let computed: Vec<String> = results.iter().map(|(g, _, c)| format!("D({g})={c}")).collect();
    Ok(Outcome::compare(expected.join(" "), computed.join(" ")))
}

fn check_davenport_k(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let cases = [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)];
    let results: Vec<Result<(u32, u32, u32), String>> = cases
        .par_iter()
        .map(|&(p, k)| {
            let g = group(&[p, p])?;
            Ok((p, k, davenport_k_search(&g, k, &SearchBudget::default()).map_err(err)?.value))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let show = |f: &dyn Fn(u32, u32, u32) -> u32| {
        results.iter().map(|&(p, k, v)| format!("D_{k}(C_{p}^2)={}", f(p, k, v))).collect::<Vec<_>>().join(" ")
    };
    Ok(Outcome::compare(show(&|p, k, _| k * p + p - 1), show(&|_, _, v| v)))
}

fn check_zsf(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for p in [2u32, 3, 5, 7] {
        let g = group(&[p])?;
        let mut want: Vec<String> = (1..p)
            .map(|a| Sequence::power(&g, &g.element(&[a]).expect("a < p"), p - 1).expect("in g").to_string())
            .collect();
        let mut got: Vec<String> =
            classify_maximal_zsf(p, &SearchBudget::default()).map_err(err)?.iter().map(|s| s.to_string()).collect();
        want.sort();
        got.sort();
        expected.push(format!("p={p}: {}", want.join(" | ")));
        computed.push(format!("p={p}: {}", got.join(" | ")));
    }
    Ok(Outcome::compare(expected.join("; "), computed.join("; ")))
}

/// All multisets of `len` codes from `0..n`, as count vectors.
fn multisets(n: usize, len: usize) -> Vec<Vec<u32>> {
    fn go(i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left as u32;
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[i] = c as u32;
            go(i + 1, left - c, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, len, &mut vec![0; n], &mut out);
    out
}

fn short_zero_sum_failure(s: &Sequence, p: usize) -> Option<String> {
    match find_short_zero_sum(s) {
        Ok(x) if s.divides(&x) && x.is_zero_sum() && (x.len() == p || x.len() == 2 * p) => None,
        Ok(x) => Some(format!("{s}: invalid answer {x}")),
        Err(e) => Some(format!("{s}: {e}")),
    }
}

fn check_eta(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let g3 = group(&[3, 3])?;
    let all = multisets(9, 7);
    let mut failures: Vec<String> = all
        .par_iter()
        .filter_map(|counts| short_zero_sum_failure(&Sequence::from_count_vector(&g3, counts), 3))
        .collect();
    let g5 = group(&[5, 5])?;
    let codes: Vec<u32> = (0..25).collect();
    let random: Vec<Sequence> = (0..1000).map(|_| random_sequence(rng, &g5, 13, &codes)).collect();
    failures.par_extend(random.par_iter().filter_map(|s| short_zero_sum_failure(s, 5)));
    Ok(Outcome::trials(&format!("sequences ({} exhaustive at p=3, 1000 random at p=5)", all.len()), all.len() + 1000, &failures))
}

fn check_cd(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let mut failures = Vec::new();
    let primes = [3u32, 5, 7, 11];
    for i in 0..10_000 {
        let p = primes[i % primes.len()];
        let g = group(&[p])?;
        let nonzero: Vec<u32> = (1..p).collect();
        let len = rng.gen_range(1..=2 * p as usize);
        let s = random_sequence(rng, &g, len, &nonzero);
        let r = cd_check(&s).map_err(err)?;
        if !r.pass {
            failures.push(format!("{s} over C_{p}: |Sigma| = {} < {}", r.sigma_size, r.bound));
        }
    }
    Ok(Outcome::trials("random sequences", 10_000, &failures))
}

fn check_separ(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let p = 5u32;
    let g = group(&[p, p])?;
    let cp = group(&[p])?;
    let all: Vec<u32> = (0..25).collect();
    let off_kernel: Vec<u32> = all.iter().copied().filter(|&c| g.decode(c).coords()[0] != 0).collect();
    let kernel: Vec<u32> = all.iter().copied().filter(|&c| g.decode(c).coords()[0] == 0).collect();
    let mut failures = Vec::new();
    for trial in 0..1000 {
        // at most p elements projecting to 0
        let zeros = rng.gen_range(0..=p as usize);
        let s = random_sequence(rng, &g, zeros, &kernel).concat(&random_sequence(rng, &g, 24 - zeros, &off_kernel)).map_err(err)?;
        let mut codes = s.codes();
        codes.shuffle(rng);
        let t_len = if trial % 2 == 0 { 0 } else { rng.gen_range(1..p as usize) };
        let t = Sequence::from_codes(&g, codes.into_iter().take(t_len));
        let f = match separ_factor(&s, &t, p) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("S={s}, T={t}: {e}"));
                continue;
            }
        };
        let fac = &f.factorization;
        let ok = fac.len() == (p - 1) as usize
            && fac.is_valid_for(&s)
            && s.remove(f.first()).and_then(|r| r.remove(f.second())).is_ok_and(|r| r.divides(&t))
            && f.first().map(&cp, |e| cp.element(&e.coords()[..1]).expect("below p")).partial_sums().len() == p as usize;
        if !ok {
            failures.push(format!("S={s}, T={t}: postcondition violated"));
        }
    }
    Ok(Outcome::trials("random instances", 1000, &failures))
}

fn check_nullak(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let p = if trial % 2 == 0 { 3u32 } else { 5 };
        let g = group(&[p])?;
        let len = (p * p - 1) as usize + rng.gen_range(0..3);
        let zeros = p as usize + 1 + rng.gen_range(0..3);
        let all: Vec<u32> = (0..p).collect();
        let s = random_sequence(rng, &g, zeros, &[0]).concat(&random_sequence(rng, &g, len - zeros, &all)).map_err(err)?;
        match nullak_factor(&s) {
            Ok(f) if f.len() >= (2 * p - 1) as usize && f.is_valid_for(&s) => {}
            Ok(f) => failures.push(format!("{s}: {} factors", f.len())),
            Err(e) => failures.push(format!("{s}: {e}")),
        }
    }
    Ok(Outcome::trials("random instances", 1000, &failures))
}

fn check_h3_beta(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let m = module("p=3;V=[1:1]")?;
    let r = InvariantEngine::new(&m).noether_number(11).map_err(err)?;
    let gap = |d: u32| r.degrees.iter().find(|row| row.d == d).map_or(0, |row| row.gap);
    let show = |beta: u32, certified: bool, g9: bool, g10: usize, g11: usize| {
        format!("beta={beta} certified={certified} gap(9)>0={g9} gap(10)={g10} gap(11)={g11}")
    };
    Ok(Outcome::compare(show(9, true, true, 0, 0), show(r.beta, r.certified, gap(9) > 0, gap(10), gap(11))))
}

fn check_obstruction(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let m = module("p=3;V=[1:1]")?;
    let e = InvariantEngine::new(&m);
    let (x, y, z) = xyz(&m, 1)?;
    let (q, _) = heisenberg_quotient(&m, QuotientKind::A).map_err(err)?;
    let tau = q.transfer(&m.poly(m.monomial(&[(x, 6), (y, 3)]))).map_err(err)?;
    // generators of degree <= 8 span the degree-9 part of (R_+)^2
    let residue = e.product_slice(2, 9).map_err(err)?.reduce(&tau);
    let mut irreducible: Vec<String> =
        m.irreducible_a_invariants(3).map_err(err)?.iter().map(|u| m.format_monomial(u)).collect();
    irreducible.sort();
    let mut want: Vec<String> = [vec![(x, 1), (y, 1), (z, 1)], vec![(x, 3)], vec![(y, 3)], vec![(z, 3)]]
        .iter()
        .map(|pairs| m.format_monomial(&m.monomial(pairs)))
        .collect();
    want.sort();
    let show = |nonzero: bool, irr: &[String]| format!("residue nonzero={nonzero}; irreducibles={}", irr.join(", "));
    Ok(Outcome::compare(show(true, &want), show(!residue.is_zero(), &irreducible)))
}

fn xyz(m: &Module, copy: u32) -> Result<(usize, usize, usize), String> {
    let v = |k| m.x(1, k, copy).ok_or_else(|| format!("module has no copy {copy} of block 1"));
    Ok((v(0)?, v(1)?, v(2)?))
}

/// Both sides of the polarization identity on `V_w^3`, with `tau` the
/// unnormalized sum over `G/A`.
pub(crate) fn polar_sides(normalized: bool) -> Result<(Polynomial, Polynomial, Module), String> {
    let m = module("p=3;V=[1:3]")?;
    let [(x1, y1, z1), (_, y2, z2), (x3, _, z3)] = [xyz(&m, 1)?, xyz(&m, 2)?, xyz(&m, 3)?];
    let mono = |pairs: &[(usize, u16)]| m.poly(m.monomial(pairs));
    let lhs = polarize(&m, &mono(&[(x1, 1), (y1, 1), (z3, 1)]), 1, 1, 2)
        .and_then(|a| Ok(a.add(&polarize(&m, &mono(&[(x1, 1), (y2, 1), (z2, 1)]), 1, 2, 3)?)))
        .and_then(|a| Ok(a.add(&polarize(&m, &mono(&[(x3, 1), (y2, 1), (z3, 1)]), 1, 3, 1)?)))
        .map_err(err)?;
    let (q, _) = heisenberg_quotient(&m, QuotientKind::A).map_err(err)?;
    let inner = mono(&[(x3, 1), (y2, 1), (z1, 1)]);
    let tau = if normalized { q.transfer(&inner) } else { q.orbit_sum(&inner) }.map_err(err)?;
    let three = Cyclotomic::from_integer(3, 3).map_err(err)?;
    let rhs = mono(&[(x1, 1), (y2, 1), (z3, 1)]).scale(&three).add(&tau);
    Ok((lhs, rhs, m))
}

fn check_polar(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let (lhs, rhs, m) = polar_sides(false)?;
    Ok(Outcome { expected: m.format_poly(&rhs), computed: m.format_poly(&lhs), pass: lhs == rhs })
}

fn check_abelian(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let cases = [("p=3;r=1;X=all", vec![3u32]), ("p=3;r=2;X=all", vec![3, 3]), ("p=2;r=3;X=all", vec![2, 2, 2])];
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for (spec, orders) in cases {
        let g = group(&orders)?;
        let d = davenport_search(&g, &SearchBudget::default()).map_err(err)?.value;
        let m = module(spec)?;
        let r = InvariantEngine::new(&m).noether_number(d + 1).map_err(err)?;
        expected.push(format!("C({g}): {d} certified"));
        computed.push(format!("C({g}): {} {}", r.beta, if r.certified { "certified" } else { "lower bound" }));
    }
    Ok(Outcome::compare(expected.join("; "), computed.join("; ")))
}

fn check_reduction(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let a = module("p=3;r=2;X=all")?;
    let beta3 = InvariantEngine::new(&a).noether_k(3, 11).map_err(err)?;
    let h = module("p=3;V=[1:1]")?;
    let beta = InvariantEngine::new(&h).noether_number(11).map_err(err)?;
    let restricted = h.restrict(&["a", "c"]).map_err(err)?;
    let beta3_v = InvariantEngine::new(&restricted).noether_k(3, 11).map_err(err)?;
    let chain = beta.beta <= beta3_v.beta && beta3_v.beta <= beta3.beta;
    let expected = "beta_3(C_3^2)=11 certified; chain holds".to_string();
    let computed = format!(
        "beta_3(C_3^2)={}{}; beta(H_3,V_w)={} <= beta_3(A,V_w)={} <= {}: {}",
        beta3.beta,
        if beta3.certified { " certified" } else { "" },
        beta.beta,
        beta3_v.beta,
        beta3.beta,
        if chain { "chain holds" } else { "chain fails" }
    );
    let pass = beta3.beta == 11 && beta3.certified && beta3_v.certified && chain;
    Ok(Outcome { expected, computed, pass })
}

/// A random monomial of degree `d` whose variables satisfy `keep`, drawn by
/// rejection; `None` when no draw succeeds.
fn random_monomial<F>(rng: &mut ChaCha8Rng, m: &Module, d: u32, keep: F) -> Option<Monomial>
where
    F: Fn(&Monomial) -> bool,
{
    let n = m.nvars();
    for _ in 0..2000 {
        let mut e = vec![0u16; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let mono = Monomial::from_exponents(e);
        if keep(&mono) {
            return Some(mono);
        }
    }
    None
}

/// Random nonzero coefficient `w^e * c` with `c` in `1..=3`.
fn random_coefficient(rng: &mut ChaCha8Rng, p: u32) -> Cyclotomic {
    let c = Cyclotomic::from_integer(p, rng.gen_range(1..=3)).expect("p prime");
    &root(p, rng.gen_range(0..p)) * &c
}

/// Random homogeneous combination of up to three monomials drawn by `random_monomial`.
fn random_poly<F>(rng: &mut ChaCha8Rng, m: &Module, d: u32, keep: F) -> Option<Polynomial>
where
    F: Fn(&Monomial) -> bool,
{
    let mut f = Polynomial::zero(m.p(), m.nvars());
    for _ in 0..rng.gen_range(1..=3) {
        let mono = random_monomial(rng, m, d, &keep)?;
        let c = random_coefficient(rng, m.p());
        f.add_term(mono, &c);
    }
    (!f.is_zero()).then_some(f)
}

fn a_invariant(m: &Module) -> impl Fn(&Monomial) -> bool + '_ {
    |u| m.is_a_invariant(u).unwrap_or(false)
}

fn check_trukk(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let modules = [module("p=3;V=[1:1]")?, module("p=3;V=[1:1,2:1]")?];
    let engines: Vec<_> = modules.iter().map(InvariantEngine::new).collect();
    let mut failures = Vec::new();
    let mut trials = 0;
    while trials < 50 {
        let i = trials % 2;
        let m = &modules[i];
        // V_w only has A-invariants in degrees divisible by 3
        let (d1, d2) = if i == 0 { (3, 3) } else { (rng.gen_range(2..=6), 0) };
        let d2 = if i == 0 { d2 } else { rng.gen_range(2..=8 - d1) };
        let (Some(u1), Some(u2)) = (random_poly(rng, m, d1, a_invariant(m)), random_poly(rng, m, d2, a_invariant(m)))
        else {
            continue;
        };
        trials += 1;
        let n = rng.gen_range(1..m.p());
        let diff = trukk_difference(m, &[u1.clone(), u2.clone()], n).map_err(err)?;
        match engines[i].in_hilbert_ideal(&diff) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("u1={}, u2={}, n={n}", m.format_poly(&u1), m.format_poly(&u2))),
            Err(e) => failures.push(e.to_string()),
        }
    }
    Ok(Outcome::trials("random pairs", 50, &failures))
}

fn check_b1(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let m = module("p=3;U=[(1,0),(0,1)];V=[1:1]")?;
    let e = InvariantEngine::new(&m);
    let c = m.group().subgroup(&["c"]).map_err(err)?;
    let v_degree = |u: &Monomial| u.support().filter(|&(v, _)| m.block_of(v).is_some()).map(|(_, k)| k as u32).sum::<u32>();
    let mut failures = Vec::new();
    let mut trials = 0;
    while trials < 20 {
        let mut factors = Vec::new();
        for _ in 0..5 {
            let d = rng.gen_range(1..=3);
            if let Some(f) = random_poly(rng, &m, d, |u| v_degree(u) % 3 == 0) {
                factors.push(f);
            }
        }
        if factors.len() < 5 {
            continue;
        }
        trials += 1;
        if let Some(f) = factors.iter().find(|f| !c.fixes(f)) {
            return Err(format!("{} is not <c>-invariant", m.format_poly(f)));
        }
        let product = factors.iter().fold(m.one(), |acc, f| acc.mul(f));
        match e.in_hilbert_ideal(&product) {
            Ok(true) => {}
            Ok(false) => failures.push(m.format_poly(&product)),
            Err(err) => failures.push(err.to_string()),
        }
    }
    Ok(Outcome::trials("random products", 20, &failures))
}

fn check_decomposition(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let modules = [module("p=3;V=[1:1]")?, module("p=3;V=[1:1,2:1]")?, module("p=3;U=[(1,0),(0,1)];V=[1:1]")?];
    let mut failures = Vec::new();
    let mut trials = 0;
    while trials < 100 {
        let m = &modules[trials % modules.len()];
        let d = rng.gen_range(1..=6);
        let Some(u) = random_poly(rng, m, d, a_invariant(m)) else {
            continue;
        };
        trials += 1;
        let (q, chars) = heisenberg_quotient(m, QuotientKind::A).map_err(err)?;
        let b = m.group().generator("b").expect("b");
        let bi = m.group().index_of(b).expect("member");
        let mut total = Polynomial::zero(m.p(), m.nvars());
        let mut ok = true;
        for chi in &chars {
            let part = q.semi_projection(chi, &u).map_err(err)?;
            // b acts on the chi-component by chi(b)
            ok &= act(b, &part) == part.scale(&root(m.p(), chi.value(bi)));
            total = total.add(&part);
        }
        if !ok || total != u {
            failures.push(m.format_poly(&u));
        }
    }
    Ok(Outcome::trials("random A-invariants", 100, &failures))
}

fn check_polarization(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let m = module("p=3;V=[1:3]")?;
    let e = InvariantEngine::new(&m);
    let inv3 = e.invariant_basis(3).map_err(err)?.basis();
    let mut failures = Vec::new();
    for trial in 0..100 {
        let (s, t) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let d = rng.gen_range(1..=4);
        let f = random_poly(rng, &m, d, |_| true).expect("every monomial is accepted");
        let g = m.group().element(rng.gen_range(0..m.group().order()));
        let left = polarize(&m, &act(g, &f), 1, s, t).map_err(err)?;
        let right = act(g, &polarize(&m, &f, 1, s, t).map_err(err)?);
        if left != right {
            failures.push(format!("equivariance: f={}, s={s}, t={t}", m.format_poly(&f)));
        }
        if trial % 4 == 0 {
            // derivation of (invariant * h): both Leibniz terms lie in the ideal
            let inv = inv3.choose(rng).expect("degree-3 invariants exist");
            let h = random_poly(rng, &m, 1, |_| true).expect("every monomial is accepted");
            let image = polarize(&m, &inv.mul(&h), 1, s, t).map_err(err)?;
            if !e.in_hilbert_ideal(&image).map_err(err)? {
                failures.push(format!("ideal: h={}, s={s}, t={t}", m.format_poly(&h)));
            }
        }
    }
    Ok(Outcome::trials("random polynomials", 100, &failures))
}

fn check_b_beta(_: &mut ChaCha8Rng) -> Result<Outcome, String> {
    let specs = [
        ("p=3;V=[1:1]", 11),
        ("p=3;U=[(1,0),(0,1)];V=[1:1]", 11),
        ("p=3;r=1;X=all", 4),
        ("p=3;r=2;X=all", 6),
        ("p=2;r=3;X=all", 5),
    ];
    let rows: Vec<Result<(String, u32, Option<u32>, bool), String>> = specs
        .par_iter()
        .map(|&(spec, dmax)| {
            let m = module(spec)?;
            let e = InvariantEngine::new(&m);
            let beta = e.noether_number(dmax).map_err(err)?;
            let top = e.top_degree_coinvariants(dmax + 2).map_err(err)?;
            Ok((spec.to_string(), beta.beta, top.b, top.exact))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut failures = Vec::new();
    let mut computed = Vec::new();
    for (spec, beta, b, exact) in &rows {
        let b_text = b.map_or("none".to_string(), |b| b.to_string());
        computed.push(format!("{spec}: beta={beta} b={b_text}{}", if *exact { "" } else { "+" }));
        if !exact || b.is_some_and(|b| *beta > b + 1) {
            failures.push(spec.clone());
        }
    }
    Ok(Outcome {
        expected: format!("beta <= b + 1 with b exact on {} modules", rows.len()),
        computed: computed.join("; "),
        pass: failures.is_empty(),
    })
}

fn check_rewrite(rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    // A-invariant monomials over V_w-blocks have degree divisible by 3 when
    // only block 1 occurs, so that module uses degree 12
    let cases = [(module("p=3;V=[1:2]")?, 12u32), (module("p=3;V=[1:1,2:1]")?, 10)];
    let engines: Vec<_> = cases.iter().map(|(m, _)| InvariantEngine::new(m)).collect();
    let mut failures = Vec::new();
    let mut fallbacks = 0;
    for trial in 0..100 {
        let (m, d) = (&cases[trial % 2].0, cases[trial % 2].1);
        let big = random_monomial(rng, m, d, a_invariant(m)).ok_or("no A-invariant monomial found")?;
        let mut vars: Vec<usize> = big.variables().collect();
        vars.shuffle(rng);
        let k = rng.gen_range(1..=3);
        let n = m.nvars();
        let v = vars[..k].iter().fold(Monomial::one(n), |acc, &x| acc.mul(&Monomial::var(n, x)));
        let v_target = vars[..k].iter().fold(Monomial::one(n), |acc, &x| {
            let moved = m.shift(x, rng.gen_range(0..3)).expect("V-coordinate");
            acc.mul(&Monomial::var(n, moved))
        });
        match homologous_rewrite(&engines[trial % 2], &big, &v, &v_target) {
            Ok(r) => fallbacks += r.fallback as usize,
            Err(InvariantError::SearchFailure(e)) | Err(InvariantError::Precondition(e)) => failures.push(e),
            Err(e) => failures.push(e.to_string()),
        }
    }
    let mut out = Outcome::trials("random monomials", 100, &failures);
    out.computed.push_str(&format!(" ({fallbacks} needed the exhaustive search)"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selection() {
        assert!(matches!(run_suite(Some("nothing"), 1, 0), Err(VerifyError::UnknownCheck(_))));
        assert!(matches!(run_suite(Some("("), 1, 0), Err(VerifyError::Filter(_))));
        let r = run_suite(Some("lemma\\.(zsf|cd)"), 2, 7).unwrap();
        assert_eq!(r.records.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["lemma.cd", "lemma.zsf"]);
        assert!(r.summary.pass, "{r:?}");
    }

    #[test]
    fn multisets_count() {
        assert_eq!(multisets(9, 7).len(), 6435);
        assert!(multisets(3, 2).iter().all(|c| c.iter().sum::<u32>() == 2));
    }

    #[test]
    fn normalized_transfer_breaks_the_polar_identity() {
        let (lhs, rhs, _) = polar_sides(true).unwrap();
        assert_ne!(lhs, rhs);
        let (lhs, rhs, _) = polar_sides(false).unwrap();
        assert_eq!(lhs, rhs);
    }
}
