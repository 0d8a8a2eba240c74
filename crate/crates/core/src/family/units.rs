//! The family unit `ρ_i = x_i + y_i √N_i` against the fundamental unit of
//! its field.

use num_bigint::BigUint;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::{FamilyError, FamilyRow};
use crate::arith::isqrt;
use crate::cfrac::{fundamental_unit, FundUnit};

/// Constant `C` in `ρ_i ≤ C · n^{2k+1}`.
///
/// `ρ_i < 2x_i + 1 = 4 A_i^2 (n-i) - 1 < 4 n^{2k+1}`, and the ratio
/// `ρ_0 / n^{2k+1}` tends to 4 as `n` grows, so no smaller constant holds
/// for all `n`.
pub const UNIT_BOUND_CONSTANT: u32 = 4;

/// `x + y√N ≤ c · n^{2k+1}`, decided exactly.
pub fn unit_bound_holds(x: u128, y: u128, radicand: u128, n: u64, k: u32, c: u32) -> bool {
    let bound = BigUint::from(c) * BigUint::from(n).pow(2 * k + 1);
    let x = BigUint::from(x);
    if x > bound {
        return false;
    }
    let slack = bound - x;
    let y = BigUint::from(y);
    &y * &y * radicand <= &slack * &slack
}

/// `ρ = x + y√N` written as `(u + v√D)/2` over the field discriminant `D`,
/// where `N = m s^2`.
pub(crate) fn rho_half_coords(x: u128, y: u128, radicand: u128, m: u128, disc: u128) -> FundUnit {
    let s = isqrt(radicand / m);
    debug_assert_eq!(s * s * m, radicand);
    let u = BigUint::from(x) * 2u32;
    let ys = BigUint::from(y) * s;
    // D = m gives √N = s√D; D = 4m gives √N = (s/2)√D
    let v = if disc == m { ys * 2u32 } else { ys };
    FundUnit {
        u,
        v,
        d: disc,
        norm: 1,
    }
}

/// Smallest `m ≤ 64` with `ε^m = ρ`, comparing exact coordinates.
pub(crate) fn find_exponent(eps: &FundUnit, rho: &FundUnit) -> Option<u32> {
    let mut power = eps.clone();
    for m in 1..=64u32 {
        if power.u == rho.u && power.v == rho.v && power.norm == rho.norm {
            return Some(m);
        }
        if power.u > rho.u {
            return None;
        }
        power = power.mul(eps);
    }
    None
}

/// The fundamental unit of `Q(√N_i)` and the exponent `m` with `ρ_i = ε^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRelation {
    pub unit: FundUnit,
    pub exponent: u32,
}

pub(crate) fn relation_for_row(k: u32, n: u64, row: &FamilyRow) -> Result<UnitRelation, FamilyError> {
    let unit = fundamental_unit(row.disc)?;
    let rho = rho_half_coords(row.x, row.y, row.radicand, row.m, row.disc);
    let exponent = find_exponent(&unit, &rho)
        .ok_or(FamilyError::UnitPowerNotFound { k, n, i: row.i })?;
    Ok(UnitRelation { unit, exponent })
}

pub fn unit_relation(k: u32, n: u64, i: u32) -> Result<UnitRelation, FamilyError> {
    let row = super::family_row(k, n, i)?;
    relation_for_row(k, n, &row)
}

/// The exponent `m ≥ 1` with `x_i + y_i √N_i = ε_{D_i}^m`.
pub fn unit_power_check(k: u32, n: u64, i: u32) -> Result<u32, FamilyError> {
    Ok(unit_relation(k, n, i)?.exponent)
}

/// Unit data for one row, without class numbers: usable where `D_i` is far
/// beyond the reach of form enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCertificate {
    pub k: u32,
    pub n: u64,
    #[serde(flatten)]
    pub row: FamilyRow,
    pub unit: FundUnit,
    pub unit_exponent: u32,
    pub bound_constant: u32,
    pub bound_ok: bool,
}

impl UnitCertificate {
    /// `ε ≤ ρ`, from the coordinatewise comparison of `(u, v)`.
    pub fn unit_below_rho(&self) -> bool {
        let rho = rho_half_coords(self.row.x, self.row.y, self.row.radicand, self.row.m, self.row.disc);
        self.unit.u <= rho.u && self.unit.v <= rho.v
    }

    pub fn bound_holds_with(&self, c: u32) -> bool {
        unit_bound_holds(self.row.x, self.row.y, self.row.radicand, self.n, self.k, c)
    }
}

/// Unit certificates for every row of the `(k, n)` instance.
pub fn certify_units(k: u32, n: u64) -> Result<Vec<UnitCertificate>, FamilyError> {
    (0..=k)
        .map(|i| {
            let row = super::family_row(k, n, i)?;
            let rel = relation_for_row(k, n, &row)?;
            let bound_ok = unit_bound_holds(row.x, row.y, row.radicand, n, k, UNIT_BOUND_CONSTANT);
            Ok(UnitCertificate {
                k,
                n,
                row,
                unit: rel.unit,
                unit_exponent: rel.exponent,
                bound_constant: UNIT_BOUND_CONSTANT,
                bound_ok,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::family_unit;

    #[test]
    fn power_examples() {
        assert_eq!(unit_power_check(1, 3, 0).unwrap(), 1);
        assert_eq!(unit_power_check(1, 3, 1).unwrap(), 1);
        assert_eq!(unit_power_check(1, 2, 0).unwrap(), 2);
        let rel = unit_relation(1, 3, 1).unwrap();
        assert_eq!(rel.unit.d, 136);
        assert_eq!(rel.unit.u, BigUint::from(70u32));
        assert_eq!(rel.unit.v, BigUint::from(6u32));
    }

    #[test]
    fn bound_constant_four_is_sharp() {
        // for k = 1, ρ_0 / n^3 tends to 4
        let (x, y) = family_unit(1, 10, 0).unwrap();
        let (_, r) = super::super::shifted_decomposition(1, 10, 0).unwrap();
        assert!(!unit_bound_holds(x, y, r, 10, 1, 3));
        assert!(unit_bound_holds(x, y, r, 10, 1, 4));
        let n = 1_000_000u64;
        let (x, y) = family_unit(1, n, 0).unwrap();
        let (_, r) = super::super::shifted_decomposition(1, n, 0).unwrap();
        assert!(unit_bound_holds(x, y, r, n, 1, 4));
        let rho = x as f64 + y as f64 * (r as f64).sqrt();
        assert!(rho / (n as f64).powi(3) > 3.99);
    }

    #[test]
    fn unit_certificates_small_range() {
        for k in 0..=3u32 {
            for n in (u64::from(k) + 2)..=30 {
                for c in certify_units(k, n).unwrap() {
                    assert!(c.unit.is_unit());
                    assert!(c.unit_exponent >= 1);
                    assert!(c.unit_below_rho());
                    assert!(c.bound_ok);
                    let rho = rho_half_coords(c.row.x, c.row.y, c.row.radicand, c.row.m, c.row.disc);
                    let p = c.unit.pow(c.unit_exponent);
                    assert_eq!((p.u, p.v), (rho.u, rho.v));
                }
            }
        }
    }
}
