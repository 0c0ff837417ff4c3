//! Rewriting an A-invariant monomial modulo the Hilbert ideal of H_3 so that
//! it contains a prescribed divisor, by moving b-translates between
//! A-invariant factors.
//!
//! cargo run --release --example homologous_rewrite

use zsinv::action::{build_module, DEFAULT_GROUP_BUDGET};
use zsinv::invariants::{homologous_rewrite, InvariantEngine};

fn main() {
    let m = build_module(&"p=3;V=[1:2]".parse().unwrap(), DEFAULT_GROUP_BUDGET).unwrap();
    let e = InvariantEngine::new(&m);
    let (x1, y1, z1) = (m.x(1, 0, 1).unwrap(), m.x(1, 1, 1).unwrap(), m.x(1, 2, 1).unwrap());
    let (x2, y2, z2) = (m.x(1, 0, 2).unwrap(), m.x(1, 1, 2).unwrap(), m.x(1, 2, 2).unwrap());

    let big = m.monomial(&[(x1, 5), (y1, 3), (z1, 2), (x2, 1), (z2, 1)]);
    let v = m.monomial(&[(x1, 2), (x2, 1)]);
    let target = m.monomial(&[(z1, 2), (y2, 1)]);
    println!("m  = {}", m.format_monomial(&big));
    println!("v  = {}  ->  v' = {}", m.format_monomial(&v), m.format_monomial(&target));
    let r = homologous_rewrite(&e, &big, &v, &target).unwrap();
    println!("m' = {}  ({} moves, exhaustive search used: {})", r.text, r.moves, r.fallback);
    let diff = m.poly(big.clone()).sub(&m.poly(r.result.clone()));
    println!("m - m' in Hilbert ideal: {}", e.in_hilbert_ideal(&diff).unwrap());
    println!("m ~ m': {}", m.homologous(&big, &r.result).unwrap());
}
