//! The polynomial `f(n) = ∏_{i=0}^{k} (d(n) + i)`, its fixed divisor, and
//! exact scans for squarefree values of `f(n) / B'`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{factor_shifted, kernel_and_discriminant, FamilyError};
use crate::arith::{factor, fixed_divisor, poly_gcd_squarefree, reduced_divisor, IntPolynomial};
use crate::decimal;

/// `min(floor(ln n / 5) - 1, floor((1 - 10 eps) ln n / ln ln n))`, floored at 0.
pub fn remark1_k_bound(n: u64, eps: f64) -> Result<u64, FamilyError> {
    if n < 3 {
        return Err(FamilyError::NTooSmall(n));
    }
    if !(eps > 0.0 && eps < 0.1) {
        return Err(FamilyError::InvalidEps(eps));
    }
    let ln = (n as f64).ln();
    let first = (ln / 5.0).floor() - 1.0;
    let second = ((1.0 - 10.0 * eps) * ln / ln.ln()).floor();
    Ok(first.min(second).max(0.0) as u64)
}

/// `d(n) = ∏_{j=0}^{k} (n-j)^2 - n` as a polynomial in `n`.
fn d_poly(k: u32) -> IntPolynomial {
    let mut prod = IntPolynomial::constant(1);
    for j in 0..=k {
        let lin = IntPolynomial::linear(i64::from(j));
        prod = &prod * &(&lin * &lin);
    }
    &prod - &IntPolynomial::linear(0)
}

/// `f(n) = ∏_{i=0}^{k} (d(n) + i)`, of degree `2(k+1)^2`.
pub fn conjecture_poly(k: u32) -> IntPolynomial {
    let d = d_poly(k);
    let mut f = IntPolynomial::constant(1);
    for i in 0..=k {
        f = &f * &(&d + &IntPolynomial::constant(i64::from(i)));
    }
    f
}

/// `(B, B')`: the fixed divisor of `f` and `B / rad(B)`.
pub fn conjecture_constants(k: u32) -> Result<(u128, u128), FamilyError> {
    let b: BigUint = fixed_divisor(&conjecture_poly(k))?;
    let b = b.to_u128().ok_or(FamilyError::Overflow { k, n: 0 })?;
    Ok((b, reduced_divisor(b)?))
}

/// `f` has no repeated complex root.
pub fn squarefree_root_check(k: u32) -> Result<bool, FamilyError> {
    Ok(poly_gcd_squarefree(&conjecture_poly(k))?)
}

/// Exact counts of `n` in `(k, n_max]` with `f(n) / B'` squarefree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub k: u32,
    pub n_max: u64,
    #[serde(rename = "B", with = "decimal")]
    pub b: u128,
    #[serde(rename = "B_prime", with = "decimal")]
    pub b_prime: u128,
    pub count_squarefree: u64,
    pub count_total: u64,
    pub density: f64,
    /// Counted `n` for which some `D_i · B' < d + i`.
    pub mechanism_failures: Vec<u64>,
    /// `n` where `f(n) = 0`.
    pub degenerate: Vec<u64>,
}

enum ScanPoint {
    Degenerate,
    NotSquarefree,
    Squarefree { mechanism_ok: bool },
}

fn scan_point(k: u32, n: u64, b_prime_factors: &[(u128, u32)], b_prime: u128) -> Result<ScanPoint, FamilyError> {
    if super::d_of(k, n).is_err() {
        return Ok(ScanPoint::Degenerate);
    }
    let mut exps: Vec<(u128, u32)> = Vec::new();
    let mut mechanism_ok = true;
    for i in 0..=k {
        let f = factor_shifted(k, n, i)?;
        let (_, disc) = kernel_and_discriminant(&f).ok_or(FamilyError::Overflow { k, n })?;
        // D_i · B' ≥ d + i, without overflow: compare D_i ≥ ceil((d+i)/B')
        if disc < f.value().div_ceil(b_prime) {
            mechanism_ok = false;
        }
        exps = crate::arith::merge_exponents(&exps, f.factors());
    }
    for &(p, e) in b_prime_factors {
        match exps.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(idx) if exps[idx].1 >= e => exps[idx].1 -= e,
            _ => panic!("B' does not divide f({n}) for k = {k}"),
        }
    }
    if exps.iter().all(|&(_, e)| e <= 1) {
        Ok(ScanPoint::Squarefree { mechanism_ok })
    } else {
        Ok(ScanPoint::NotSquarefree)
    }
}

/// Scans `n` in `(k, n_max]`, factoring each `d + i` through its coprime
/// split. Parallel over `n` on the current rayon pool; results are merged in
/// increasing `n`.
pub fn conjecture_scan(k: u32, n_max: u64) -> Result<ScanSummary, FamilyError> {
    if n_max <= u64::from(k) {
        return Err(FamilyError::NNotAboveK { k, n: n_max });
    }
    let (b, b_prime) = conjecture_constants(k)?;
    let bp_factors = factor(b_prime)?.factors().to_vec();
    let points: Vec<(u64, ScanPoint)> = (u64::from(k) + 1..=n_max)
        .into_par_iter()
        .map(|n| scan_point(k, n, &bp_factors, b_prime).map(|p| (n, p)))
        .collect::<Result<_, _>>()?;
    let mut summary = ScanSummary {
        k,
        n_max,
        b,
        b_prime,
        count_squarefree: 0,
        count_total: 0,
        density: 0.0,
        mechanism_failures: Vec::new(),
        degenerate: Vec::new(),
    };
    for (n, p) in points {
        summary.count_total += 1;
        match p {
            ScanPoint::Degenerate => summary.degenerate.push(n),
            ScanPoint::NotSquarefree => {}
            ScanPoint::Squarefree { mechanism_ok } => {
                summary.count_squarefree += 1;
                if !mechanism_ok {
                    summary.mechanism_failures.push(n);
                }
            }
        }
    }
    summary.density = summary.count_squarefree as f64 / summary.count_total as f64;
    Ok(summary)
}
