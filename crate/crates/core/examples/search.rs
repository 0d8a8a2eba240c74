//! Smallest n whose k + 1 consecutive fields all have class number above X.
//!
//! cargo run --release --example search -- 2 10 200

use realquad::classgroup::Summation;
use realquad::family::theorem1_search;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let x: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10.0);
    let n_max: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100);
    let s = theorem1_search(k, x, 2, n_max, Summation::Compensated)?;
    match &s.certificate {
        Some(c) => {
            let hs: Vec<u64> = c.rows.iter().map(|r| r.h).collect();
            let ds: Vec<u128> = c.rows.iter().map(|r| r.row.disc).collect();
            println!("k={k} X={x}: n = {} with D = {ds:?}, h = {hs:?}", c.n);
        }
        None => println!("k={k} X={x}: none up to {n_max} (best min h {})", s.max_min_h),
    }
    println!("examined {}, skipped {}", s.examined, s.skipped.len());
    Ok(())
}
