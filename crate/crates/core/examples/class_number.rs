//! Class numbers from reduced forms, checked against the analytic formula.
//!
//! cargo run --example class_number -- 79 229 1000003

use realquad::classgroup::{class_number, l1_exact, l1_smoothed, reduced_forms, rho_cycles};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u128> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let radicands = if args.is_empty() { vec![10, 33, 79, 229, 1_000_003] } else { args };
    for n in radicands {
        let f = class_number(n)?;
        println!(
            "Q(√{n}): D = {}, h⁺ = {}, h = {}, N(ε) = {:+}, L(1,χ) = {:.12} ± {:.1e}",
            f.d, f.h_plus, f.h, f.unit.norm, f.l1, f.l1_error
        );
    }

    let cycles = rho_cycles(&reduced_forms(40)?)?;
    println!("D = 40: {} reduced forms in {} cycles", cycles.iter().map(Vec::len).sum::<usize>(), cycles.len());
    let d = 1_000_012;
    println!(
        "D = {d}: exact L = {:.12}, smoothed L = {:.12}",
        l1_exact(d)?,
        l1_smoothed(d, 1e-12)?.value
    );
    Ok(())
}
