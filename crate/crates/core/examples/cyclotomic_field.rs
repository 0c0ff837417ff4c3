//! Exact arithmetic in Q(w), w a primitive p-th root of unity.
//!
//! cargo run --example cyclotomic_field

use zsinv::Cyclotomic;

fn main() {
    let p = 5;
    let w = Cyclotomic::root_of_unity(p, 1).unwrap();
    let one = Cyclotomic::one(p).unwrap();
    println!("w^5 = {}", w.pow(5));
    // 1 + w + ... + w^4 = 0
    let mut sum = Cyclotomic::zero(p).unwrap();
    for e in 0..p {
        sum = &sum + &w.pow(e);
    }
    println!("1 + w + w^2 + w^3 + w^4 = {sum}");

    let x = &one - &w;
    let inv = x.inverse().unwrap();
    println!("1/(1 - w) = {inv}");
    println!("check: (1 - w)/(1 - w) = {}", &x * &inv);

    // the norm of 1 - w is p
    let norm = (1..p).fold(one.clone(), |acc, e| &acc * &(&one - &w.pow(e)));
    println!("N(1 - w) = {norm}");

    let y = Cyclotomic::parse(p, "1/2 - 3*w^2 + w^4").unwrap();
    println!("({y})^2 = {}", &y * &y);
}
