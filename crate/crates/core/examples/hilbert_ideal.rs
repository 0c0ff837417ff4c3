//! The Hilbert ideal of H_3: top degree of the coinvariants, membership of
//! the moves u_1 u_2 - u_1^g u_2^(g^-1), transfers from A, and the
//! polarization identity on three copies of V_w.
//!
//! cargo run --release --example hilbert_ideal

use zsinv::action::{build_module, DEFAULT_GROUP_BUDGET};
use zsinv::invariants::{heisenberg_quotient, polarize, trukk_difference, InvariantEngine, QuotientKind};
use zsinv::Cyclotomic;

fn main() {
    let m = build_module(&"p=3;V=[1:1]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
    let e = InvariantEngine::new(&m);
    let top = e.top_degree_coinvariants(12).unwrap();
    for row in &top.degrees {
        println!("d={:>2}: ideal {:>3} of {:>3}", row.d, row.dim_ideal, row.dim_space);
    }
    println!("b = {:?} (exact: {})", top.b, top.exact);

    let (x, y) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap());
    let mono = |pairs: &[(usize, u16)]| m.poly(m.monomial(pairs));
    let d = trukk_difference(&m, &[mono(&[(x, 3)]), mono(&[(y, 3)])], 1).unwrap();
    println!("{} in ideal: {}", m.format_poly(&d), e.in_hilbert_ideal(&d).unwrap());
    let x8 = mono(&[(x, 8)]);
    println!("x^8 in ideal: {}", e.in_hilbert_ideal(&x8).unwrap());

    let (q, chars) = heisenberg_quotient(&m, QuotientKind::A).unwrap();
    let u = mono(&[(x, 6), (y, 3)]);
    println!("tau(x^6 y^3) = {}", m.format_poly(&q.transfer(&u).unwrap()));
    for chi in &chars {
        println!("  {} component: {}", chi.name(), m.format_poly(&q.semi_projection(chi, &u).unwrap()));
    }

    // three copies of V_w: x_s, y_s, z_s in copy s
    let w3 = build_module(&"p=3;V=[1:3]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
    let v = |k, s| w3.x(1, k, s).unwrap();
    let mono3 = |pairs: &[(usize, u16)]| w3.poly(w3.monomial(pairs));
    let lhs = polarize(&w3, &mono3(&[(v(0, 1), 1), (v(1, 1), 1), (v(2, 3), 1)]), 1, 1, 2)
        .unwrap()
        .add(&polarize(&w3, &mono3(&[(v(0, 1), 1), (v(1, 2), 1), (v(2, 2), 1)]), 1, 2, 3).unwrap())
        .add(&polarize(&w3, &mono3(&[(v(0, 3), 1), (v(1, 2), 1), (v(2, 3), 1)]), 1, 3, 1).unwrap());
    let (q3, _) = heisenberg_quotient(&w3, QuotientKind::A).unwrap();
    let tau = q3.orbit_sum(&mono3(&[(v(0, 3), 1), (v(1, 2), 1), (v(2, 1), 1)])).unwrap();
    let three = Cyclotomic::from_integer(3, 3).unwrap();
    let rhs = mono3(&[(v(0, 1), 1), (v(1, 2), 1), (v(2, 3), 1)]).scale(&three).add(&tau);
    println!("polarization sum      = {}", w3.format_poly(&lhs));
    println!("3 x1y2z3 + tau(x3y2z1) = {}", w3.format_poly(&rhs));
    println!("equal: {}", lhs == rhs);
}
