//! The constructive zero-sum lemmas on concrete sequences: maximal and
//! k-fold factorizations, partial-sum growth over C_p, short zero-sums in
//! C_p x C_p, and the two factorizations used for the Heisenberg bounds.
//!
//! cargo run --release --example zero_sum_lemmas

use zsinv::parse;
use zsinv::zerosum::{
    cd_check, classify_maximal_zsf, factor_k, find_short_zero_sum, max_factorization, nullak_factor, separ_factor,
    SearchBudget,
};

fn main() {
    let c3 = parse::group("3").unwrap();
    let s = parse::sequence(&c3, "1^5 2^2").unwrap();
    let f = max_factorization(&s);
    println!("max factorization of {s}: {} parts {:?} rest {}", f.len(), f.factors.iter().map(|x| x.to_string()).collect::<Vec<_>>(), f.remainder);

    let c33 = parse::group("3,3").unwrap();
    let s = parse::sequence(&c33, "(1,0)^3 (0,1)^2 (1,1) (2,2) (1,2)").unwrap();
    let f = factor_k(&s, 2).unwrap();
    println!("two zero-sum parts of {s}: {} | {}", f.factors[0], f.factors[1]);

    let c7 = parse::group("7").unwrap();
    let r = cd_check(&parse::sequence(&c7, "1 2 4").unwrap()).unwrap();
    println!("|Sigma(1 2 4)| over C_7 = {} >= {}", r.sigma_size, r.bound);

    for p in [3, 5, 7] {
        let all = classify_maximal_zsf(p, &SearchBudget::default()).unwrap();
        println!("zero-sum free of length {} over C_{p}: {}", p - 1, all.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    }

    let s = parse::sequence(&c33, "(1,0) (0,1) (1,1) (2,1) (1,2) (0,2) (2,0)").unwrap();
    println!("short zero-sum in {s}: {}", find_short_zero_sum(&s).unwrap());

    let s = parse::sequence(&c3, "0^4 1^3 2").unwrap();
    println!("2p - 1 = 5 zero-sums in {s}: {}", nullak_factor(&s).unwrap().len());

    let c55 = parse::group("5,5").unwrap();
    let s = parse::sequence(&c55, "(1,0)^8 (2,1)^6 (3,4)^5 (0,1)^5").unwrap();
    let t = parse::sequence(&c55, "(2,1) (3,4)").unwrap();
    let f = separ_factor(&s, &t, 5).unwrap();
    println!("p - 1 factors of {s} keeping T = {t} out of the first two:");
    for x in &f.factorization.factors {
        println!("  {x}");
    }
    println!("  rest {}", f.factorization.remainder);
}
