//! Davenport constants by exhaustive search, next to Olson's closed formula
//! for p-groups, and the k-th constants of C_p x C_p.
//!
//! cargo run --release --example davenport

use zsinv::zerosum::{davenport_k_search, davenport_search, olson_formula, SearchBudget};
use zsinv::AbelianGroup;

fn main() {
    let budget = SearchBudget::default();
    println!("{:<10} {:>6} {:>6}  witness (zero-sum free, length D - 1)", "group", "D", "olson");
    for (p, exps) in [(2u32, vec![1u32, 1, 1]), (2, vec![1, 2]), (3, vec![2]), (3, vec![1, 1]), (5, vec![1, 1])] {
        let orders: Vec<u32> = exps.iter().map(|&n| p.pow(n)).collect();
        let g = AbelianGroup::new(&orders).unwrap();
        let r = davenport_search(&g, &budget).unwrap();
        let olson = olson_formula(p as u64, &exps).unwrap();
        println!("C({:<8} {:>6} {:>6}  {}", format!("{g})"), r.value, olson, r.witness);
    }

    // not a p-group: no formula applies, the search still does
    let c6 = AbelianGroup::cyclic(6).unwrap();
    println!("C(6)       {:>6}", davenport_search(&c6, &budget).unwrap().value);

    println!();
    for (p, k) in [(3u32, 2u32), (3, 3), (5, 2)] {
        let g = AbelianGroup::elementary(p, 2).unwrap();
        let r = davenport_k_search(&g, k, &budget).unwrap();
        println!("D_{k}(C_{p}^2) = {:>2}  (kp + p - 1 = {:>2})  longest zero-sum with at most {k} parts: {}", r.value, k * p + p - 1, r.zero_sum_witness());
    }
}
