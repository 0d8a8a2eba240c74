//! Continued fraction of √N, its convergents, and the period pattern for A²n² − n.
//!
//! cargo run --example continued_fraction -- 94

use realquad::cfrac::{cf_expand, convergent, verify_schinzel_pattern, QuadSurd};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u128 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(94);
    let e = cf_expand(&QuadSurd::sqrt(n)?)?;
    println!("√{n} = [{:?}; {:?}] (period {})", e.preperiod, e.period, e.period_len());
    for t in 0..e.period_len().min(8) {
        let (x, y) = convergent(&e, t);
        println!("  p{t}/q{t} = {x}/{y}");
    }
    for (a, m) in [(2, 3), (5, 7), (20, 50)] {
        println!("A={a} n={m}: period of √(A²n² − n) matches: {}", verify_schinzel_pattern(a, m)?);
    }
    Ok(())
}
