//! The Heisenberg group H_3 as monomial matrices on V_w (three coordinates
//! x, y, z permuted by b and scaled by a), with the weights that A = <a, c>
//! assigns to monomials.
//!
//! cargo run --example heisenberg_action

use zsinv::action::{act, build_module, DEFAULT_GROUP_BUDGET};

fn main() {
    let m = build_module(&"p=3;V=[1:1]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
    let g = m.group();
    println!("module {} has {} coordinates, group of order {}", m.label(), m.nvars(), g.order());
    for name in ["a", "b", "c"] {
        let h = g.generator(name).unwrap();
        let images: Vec<String> = (0..m.nvars())
            .map(|v| {
                let (t, e) = h.image(v);
                let x = m.poly(m.monomial(&[(t, 1)]));
                format!("{} -> {}", m.variables()[v], m.format_poly(&x.scale(&zsinv::action::root(3, e))))
            })
            .collect();
        println!("  {name}: {}", images.join(", "));
    }

    let (x, y, z) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
    let f = m.poly(m.monomial(&[(x, 2), (y, 1)]));
    println!("(x^2 y)^b = {}", m.format_poly(&act(g.generator("b").unwrap(), &f)));

    for pairs in [vec![(x, 1), (y, 1), (z, 1)], vec![(x, 2), (y, 1)], vec![(x, 6), (y, 3)]] {
        let u = m.monomial(&pairs);
        println!(
            "phi({}) = {}  A-invariant: {}",
            m.format_monomial(&u),
            m.weight(&u).unwrap(),
            m.is_a_invariant(&u).unwrap()
        );
    }

    let irr: Vec<String> = m.irreducible_a_invariants(3).unwrap().iter().map(|u| m.format_monomial(u)).collect();
    println!("irreducible A-invariant monomials of degree <= 3: {}", irr.join(", "));

    let u = m.monomial(&[(x, 2), (y, 1)]);
    let v = m.shift_monomial(&u, 1).unwrap();
    println!("{} ~ {}: {}", m.format_monomial(&u), m.format_monomial(&v), m.homologous(&u, &v).unwrap());

    // two copies of V_w plus a one-dimensional character of H_3 / <c>
    let big = build_module(&"p=3;U=[(1,0)];V=[1:2]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
    let names: Vec<String> = big.variables().iter().map(|v| v.to_string()).collect();
    println!("{}: {}", big.label(), names.join(" "));
}
