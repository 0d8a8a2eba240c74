//! Certificate for one (k, n) instance, written to JSON and re-verified.
//!
//! cargo run --example certify_family -- 2 5

use realquad::family::{certify, FamilyCertificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let n: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(5);
    let cert = certify(k, n)?;
    println!("d = {}", cert.d);
    for r in &cert.rows {
        println!(
            "i={} N={} A={} (x, y)=({}, {}) D={} ε^{}=ρ h={} L={:.10}",
            r.row.i, r.row.radicand, r.row.a, r.row.x, r.row.y, r.row.disc, r.unit_exponent, r.h, r.l1
        );
    }
    println!("min h = {}, C(n, k+1) squarefree: {}", cert.min_h, cert.binomial_squarefree);

    let json = serde_json::to_string_pretty(&cert)?;
    let back: FamilyCertificate = serde_json::from_str(&json)?;
    back.verify()?;
    println!("re-verified from {} bytes of JSON", json.len());
    Ok(())
}
