//! Generator-degree tables and Noether numbers: H_3 on V_w, where the sweep
//! up to the bound p^2 + p - 1 certifies beta = 9, and diagonal abelian
//! actions, where beta_k agrees with the k-th Davenport constant.
//!
//! cargo run --release --example noether_numbers

use zsinv::action::{build_module, DEFAULT_GROUP_BUDGET};
use zsinv::invariants::{InvariantEngine, NoetherReport};

fn show(r: &NoetherReport) {
    println!("{} k={}", r.module, r.k);
    println!("   d  dim_inv  products  gap");
    for row in r.degrees.iter().filter(|row| row.dim_inv > 0) {
        println!("{:>4} {:>8} {:>9} {:>4}", row.d, row.dim_inv, row.dim_products, row.gap);
    }
    let status = if r.certified { "certified" } else { "lower bound" };
    println!("beta_{} = {} ({status}, bound {:?}, {} ms)\n", r.k, r.beta, r.bound, r.elapsed_ms);
}

fn main() {
    let h3 = build_module(&"p=3;V=[1:1]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
    let engine = InvariantEngine::new(&h3);
    show(&engine.noether_number(11).unwrap());
    for g in engine.generators(9).unwrap().iter() {
        println!("new generator in degree 9: {}\n", h3.format_poly(g));
    }

    // C_3 x C_3 acting through all eight nontrivial characters
    let a = build_module(&"p=3;r=2;X=all".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
    let engine = InvariantEngine::new(&a);
    show(&engine.noether_number(6).unwrap());
    show(&engine.noether_k(3, 11).unwrap());

    // the restriction of V_w to A = <a, c>
    let restricted = h3.restrict(&["a", "c"]).unwrap();
    show(&InvariantEngine::new(&restricted).noether_k(3, 11).unwrap());
}
