//! The polynomial ∏(d(n) + i), its fixed divisor, and squarefree values.
//!
//! cargo run --release --example polynomial_scan -- 1 10000

use realquad::family::{conjecture_constants, conjecture_poly, conjecture_scan, squarefree_root_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let n_max: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10_000);
    let f = conjecture_poly(k);
    println!("f_{k} has degree {:?}", f.degree());
    println!("no repeated roots: {}", squarefree_root_check(k)?);
    let (b, b_prime) = conjecture_constants(k)?;
    println!("fixed divisor B = {b}, B' = {b_prime}");
    let s = conjecture_scan(k, n_max)?;
    println!(
        "n ≤ {n_max}: {}/{} values of f(n)/B' squarefree (density {:.4}), mechanism failures {}",
        s.count_squarefree,
        s.count_total,
        s.density,
        s.mechanism_failures.len()
    );
    Ok(())
}
