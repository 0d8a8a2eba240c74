//! Units of the family: ρ = ε^m, the bound on ρ, and the admissible k for given n.
//!
//! cargo run --example unit_bound -- 3 40

use realquad::family::{certify_units, remark1_k_bound, UNIT_BOUND_CONSTANT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let n: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(40);
    for c in certify_units(k, n)? {
        println!(
            "i={} N={} ρ = ε^{} with ε = {}, ρ < {UNIT_BOUND_CONSTANT}·n^(2k+1): {}",
            c.row.i, c.row.radicand, c.unit_exponent, c.unit, c.bound_ok
        );
    }
    for m in [1_000u64, 1_000_000, 1_000_000_000_000] {
        println!("n = {m}: k ≤ {} for ε = 0.01", remark1_k_bound(m, 0.01)?);
    }
    Ok(())
}
