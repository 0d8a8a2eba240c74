//! Minimal Pell solutions and fundamental units.
//!
//! cargo run --example pell_and_units -- 61

use realquad::cfrac::{fundamental_unit, is_fundamental_discriminant, pell_min};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u128 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(61);
    let (plus, minus) = pell_min(n)?;
    println!("x² − {n}y² = 1:  x = {}, y = {}", plus.x, plus.y);
    match minus {
        Some(s) => println!("x² − {n}y² = −1: x = {}, y = {}", s.x, s.y),
        None => println!("x² − {n}y² = −1 has no solution"),
    }
    for d in [5u128, 8, 12, 13, 40, 136, 229, 3576] {
        if !is_fundamental_discriminant(d) {
            continue;
        }
        let e = fundamental_unit(d)?;
        println!("D = {d:>5}: ε = {e}, N(ε) = {:+}, R = {:.6}", e.norm, e.ln());
    }
    Ok(())
}
