use std::collections::BTreeSet;

use proptest::prelude::*;

use zsinv::action::{act, build_module, Module, Monomial, Polynomial, DEFAULT_GROUP_BUDGET};
use zsinv::invariants::reynolds;
use zsinv::zerosum::{davenport, davenport_k, factor_k, max_factorization, olson_formula};
use zsinv::{AbelianGroup, Cyclotomic, Sequence};

fn module(spec: &str) -> Module {
    build_module(&spec.parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap()
}

fn cyclo(p: u32, num: &[i64], den: i64) -> Cyclotomic {
    let d = Cyclotomic::from_integer(p, den).unwrap().inverse().unwrap();
    num.iter().enumerate().fold(Cyclotomic::zero(p).unwrap(), |acc, (e, &a)| {
        let term = &Cyclotomic::from_integer(p, a).unwrap() * &Cyclotomic::root_of_unity(p, e as i64).unwrap();
        &acc + &(&term * &d)
    })
}

fn field_element() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![2u32, 3, 5]), prop::collection::vec(-6i64..=6, 5), 1i64..=4)
        .prop_map(|(p, num, den)| cyclo(p, &num[..p as usize], den))
}

/// Three elements of one field.
fn field_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(vec![2u32, 3, 5]).prop_flat_map(|p| {
        let one = (prop::collection::vec(-6i64..=6, p as usize), 1i64..=4).prop_map(move |(n, d)| cyclo(p, &n, d));
        (one.clone(), one.clone(), one)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((x, y, z) in field_triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn inverses(x in field_element()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inverse().unwrap()).is_one());
    }
}

#[test]
fn roots_of_unity() {
    for p in [2u32, 3, 5, 7] {
        let w = Cyclotomic::root_of_unity(p, 1).unwrap();
        assert!(w.pow(p).is_one());
        let sum = (0..p).fold(Cyclotomic::zero(p).unwrap(), |acc, e| &acc + &w.pow(e));
        assert!(sum.is_zero());
    }
    let w3 = |e| Cyclotomic::root_of_unity(3, e).unwrap();
    let one = Cyclotomic::one(3).unwrap();
    assert_eq!(&(&one - &w3(1)) * &(&one - &w3(2)), Cyclotomic::from_integer(3, 3).unwrap());
    assert_eq!(Cyclotomic::root_of_unity(5, 1).unwrap().inverse().unwrap(), Cyclotomic::root_of_unity(5, 4).unwrap());
}

fn sequence_over(orders: Vec<u32>, max_len: usize) -> impl Strategy<Value = Sequence> {
    let g = AbelianGroup::new(&orders).unwrap();
    let size = g.size() as u32;
    prop::collection::vec(0..size, 0..=max_len).prop_map(move |codes| Sequence::from_codes(&g, codes))
}

fn small_group() -> impl Strategy<Value = Vec<u32>> {
    prop::sample::select(vec![vec![3], vec![5], vec![2, 2], vec![3, 3], vec![2, 4], vec![6]])
}

proptest! {
    #[test]
    fn partial_sums_match_subsets(s in small_group().prop_flat_map(|o| sequence_over(o, 9))) {
        let g = s.group().clone();
        let elems = s.elements();
        let mut brute = BTreeSet::new();
        for mask in 1u32..(1 << elems.len()) {
            let sum = (0..elems.len()).filter(|i| mask >> i & 1 == 1).fold(g.zero(), |acc, i| g.add(&acc, &elems[i]));
            brute.insert(sum);
        }
        prop_assert_eq!(s.partial_sums(), brute.clone());
        prop_assert_eq!(s.is_zero_sum_free(), !brute.contains(&g.zero()));
    }

    #[test]
    fn concatenation_and_removal((s, t) in small_group().prop_flat_map(|o| (sequence_over(o.clone(), 8), sequence_over(o, 8)))) {
        let g = s.group().clone();
        let st = s.concat(&t).unwrap();
        prop_assert_eq!(st.len(), s.len() + t.len());
        prop_assert_eq!(st.sigma(), g.add(&s.sigma(), &t.sigma()));
        prop_assert!(st.divides(&t));
        prop_assert_eq!(st.remove(&t).unwrap(), s);
    }

    #[test]
    fn maximal_factorization_is_valid(s in small_group().prop_flat_map(|o| sequence_over(o, 10))) {
        let f = max_factorization(&s);
        prop_assert!(f.is_valid_for(&s));
        // a leftover zero-sum would extend the factorization
        prop_assert!(f.remainder.is_zero_sum_free());
    }

    #[test]
    fn eight_elements_of_c3_squared_split_twice(codes in prop::collection::vec(0u32..9, 8)) {
        let s = Sequence::from_codes(&AbelianGroup::new(&[3, 3]).unwrap(), codes);
        // S (-sigma(S)) has length 9 > D_2, so it has 3 zero-sum parts and S keeps two
        let f = factor_k(&s, 2).unwrap();
        prop_assert_eq!(f.len(), 2);
        prop_assert!(f.is_valid_for(&s));
    }
}

#[test]
fn davenport_agrees_with_olson_and_first_constant() {
    for (p, exps) in [(2u32, vec![1u32]), (2, vec![4]), (2, vec![1, 1, 1]), (3, vec![1, 1]), (5, vec![2]), (5, vec![1, 1])] {
        let orders: Vec<u32> = exps.iter().map(|&n| p.pow(n)).collect();
        let g = AbelianGroup::new(&orders).unwrap();
        let d = davenport(&g).unwrap();
        assert_eq!(d as u64, olson_formula(p as u64, &exps).unwrap(), "{g}");
        if g.size() <= 16 {
            assert_eq!(davenport_k(&g, 1).unwrap(), d, "{g}");
        }
    }
    assert_eq!(davenport(&AbelianGroup::trivial()).unwrap(), 1);
    assert_eq!(davenport(&AbelianGroup::cyclic(6).unwrap()).unwrap(), 6);
    for k in 1..=4 {
        assert_eq!(davenport_k(&AbelianGroup::elementary(2, 2).unwrap(), k).unwrap(), 2 * k + 1);
    }
}

const MIXED: &str = "p=3;U=[(1,2),(0,1)];V=[1:1,2:1]";

/// Random polynomial: a few terms with root-of-unity coefficients.
fn polynomial(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u16..3, nvars), 0i64..3, 1i64..3), 1..5).prop_map(move |terms| {
        let mut f = Polynomial::zero(3, nvars);
        for (e, w, c) in terms {
            let coeff = &Cyclotomic::root_of_unity(3, w).unwrap() * &Cyclotomic::from_integer(3, c).unwrap();
            f.add_term(Monomial::from_exponents(e), &coeff);
        }
        f
    })
}

fn monomial(nvars: usize, max: u16) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, nvars).prop_map(Monomial::from_exponents)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_is_a_right_action(f in polynomial(8), g in 0usize..27, h in 0usize..27) {
        let m = module(MIXED);
        let group = m.group();
        let (g, h) = (group.element(g % group.order()), group.element(h % group.order()));
        prop_assert_eq!(act(h, &act(g, &f)), act(&g.compose(h), &f));
        prop_assert_eq!(act(&g.compose(&g.inverse()), &f), f);
    }

    #[test]
    fn weights_are_additive(u in monomial(8, 4), v in monomial(8, 4)) {
        let m = module(MIXED);
        let wg = m.weight_group();
        prop_assert_eq!(m.weight(&u.mul(&v)).unwrap(), wg.add(&m.weight(&u).unwrap(), &m.weight(&v).unwrap()));
        prop_assert_eq!(m.weight_sequence(&u).unwrap().sigma(), m.weight(&u).unwrap());
    }

    #[test]
    fn homologous_is_stable_under_b_shifts(u in monomial(6, 3), shifts in prop::collection::vec(0u32..3, 6)) {
        let m = module("p=3;V=[1:1,2:1]");
        // move each variable separately by its own power of b
        let n = m.nvars();
        let moved = u.support().fold(Monomial::one(n), |acc, (v, e)| {
            let t = m.shift(v, shifts[v]).unwrap();
            acc.mul(&Monomial::from_pairs(n, &[(t, e)]))
        });
        prop_assert!(m.homologous(&u, &moved).unwrap());
        prop_assert!(m.homologous(&moved, &u).unwrap());
        prop_assert!(m.homologous(&u, &u).unwrap());
        let whole = m.shift_monomial(&moved, 1).unwrap();
        prop_assert!(m.homologous(&u, &whole).unwrap());
    }

    #[test]
    fn reynolds_projects_onto_invariants(f in polynomial(3)) {
        let m = module("p=3;V=[1:1]");
        let r = reynolds(m.group(), &f);
        prop_assert!(m.group().fixes(&r));
        prop_assert_eq!(reynolds(m.group(), &r), r);
    }
}

#[test]
fn b_changes_weights_by_the_central_weight() {
    for spec in ["p=3;V=[1:1,2:1]", "p=5;V=[1:1,3:1,4:1]"] {
        let m = module(spec);
        let p = m.p();
        for v in (0..m.nvars()).filter(|&v| m.block_of(v).is_some()) {
            let (fa, fc) = m.variable_weight(v).unwrap();
            let mut reached = BTreeSet::new();
            for n in 0..p {
                let (ga, gc) = m.variable_weight(m.shift(v, n).unwrap()).unwrap();
                assert_eq!(gc, fc);
                assert_eq!(ga, (fa + p * p - n * fc) % p, "{spec} variable {v} shift {n}");
                reached.insert(ga);
            }
            // phi_c != 0, so <b> reaches every phi_a
            assert_eq!(reached.len(), p as usize);
        }
    }
}

#[test]
fn heisenberg_orders() {
    assert_eq!(module("p=3;V=[1:1]").group().order(), 27);
    assert_eq!(module("p=5;V=[1:1]").group().order(), 125);
    assert_eq!(module(MIXED).group().order(), 27);
    // only characters of H/<c>: the image is abelian of order dividing p^2
    let u_only = module("p=3;U=[(1,0),(0,1)];V=[]");
    assert_eq!(u_only.group().order(), 9);
    assert_eq!(module("p=3;U=[(1,0)];V=[]").group().order(), 3);
}
