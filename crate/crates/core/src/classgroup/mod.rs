//! Class numbers of real quadratic fields, computed two ways: by counting
//! rho-cycles of reduced indefinite forms, and analytically from `L(1, χ_D)`
//! and the regulator.

mod forms;
mod lfunc;

pub use forms::{narrow_class_number, reduced_forms, rho_cycles, QuadForm, MAX_FORM_DISCRIMINANT};
pub use lfunc::{
    l1_exact, l1_exact_with, l1_smoothed, l1_truncated, l1_value, L1Value, Summation,
    EXACT_L1_MAX_DISCRIMINANT,
};

use serde::{Deserialize, Serialize};

use crate::arith::{squarefree_part, ArithError};
use crate::cfrac::{fundamental_unit, CfError, FundUnit};
use crate::decimal;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassGroupError {
    #[error("{0} is not a discriminant (must be positive and 0 or 1 mod 4)")]
    InvalidDiscriminant(u128),
    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(u128),
    #[error("discriminant {0} is beyond the supported range")]
    TooLarge(u128),
    #[error("{0} is not a positive fundamental discriminant")]
    NotFundamental(u128),
    #[error("radicand must be at least 2, got {0}")]
    RadicandTooSmall(u128),
    #[error("rho-orbit leaves the reduced set: {0} maps to {1}")]
    NotClosed(QuadForm, QuadForm),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("analytic class number {value} is not within 0.25 of an integer")]
    Precision { value: f64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

/// Fundamental discriminant of `Q(√n)`: the squarefree kernel `m` of `n`
/// when `m ≡ 1 (mod 4)`, otherwise `4m`. Also returns `m`.
pub fn fundamental_discriminant(n: u128) -> Result<(u128, u128), ClassGroupError> {
    if n < 2 {
        return Err(ClassGroupError::RadicandTooSmall(n));
    }
    let m = squarefree_part(n)?;
    if m == 1 {
        return Err(ClassGroupError::SquareDiscriminant(n));
    }
    let d = if m % 4 == 1 {
        m
    } else {
        m.checked_mul(4).ok_or(ClassGroupError::TooLarge(n))?
    };
    Ok((m, d))
}

/// Class number from the analytic formula `2 h log ε = √D · L(1, χ_D)`.
/// Returns the rounded value and the unrounded quotient.
pub fn analytic_class_number(
    d: u128,
    l1: f64,
    unit: &FundUnit,
) -> Result<(u64, f64), ClassGroupError> {
    let raw = (d as f64).sqrt() * l1 / (2.0 * unit.ln());
    let rounded = raw.round();
    if !(rounded >= 1.0) || (raw - rounded).abs() > 0.25 {
        return Err(ClassGroupError::Precision { value: raw });
    }
    Ok((rounded as u64, raw))
}

/// `h(D)` from `√D · L(1, χ_D) / (2 log ε_D)` alone, without forms.
pub fn analytic_h(d: u128) -> Result<u64, ClassGroupError> {
    let unit = fundamental_unit(d)?;
    let l1 = l1_value(d, Summation::Compensated)?;
    Ok(analytic_class_number(d, l1.value, &unit)?.0)
}

/// Narrow and wide class numbers from `h⁺` and the norm of the fundamental
/// unit: `h = h⁺` when the norm is `-1`, `h = h⁺/2` otherwise.
pub fn wide_class_number(h_plus: u64, norm: i8) -> u64 {
    if norm == -1 {
        h_plus
    } else {
        h_plus / 2
    }
}

/// Arithmetic invariants of `Q(√N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldInvariants {
    #[serde(with = "decimal")]
    pub radicand: u128,
    /// Squarefree kernel of the radicand.
    #[serde(with = "decimal")]
    pub m: u128,
    #[serde(rename = "D", with = "decimal")]
    pub d: u128,
    pub unit: FundUnit,
    pub h_plus: u64,
    pub h: u64,
    #[serde(rename = "L1")]
    pub l1: f64,
    pub l1_error: f64,
}

impl FieldInvariants {
    pub fn regulator(&self) -> f64 {
        self.unit.ln()
    }
}

/// Class number and related invariants of `Q(√n)`, with `h⁺` from cycles of
/// reduced forms, cross-checked against the analytic class number formula.
pub fn class_number(n: u128) -> Result<FieldInvariants, ClassGroupError> {
    class_number_with(n, Summation::Compensated)
}

pub fn class_number_with(n: u128, mode: Summation) -> Result<FieldInvariants, ClassGroupError> {
    let (m, d) = fundamental_discriminant(n)?;
    if d > MAX_FORM_DISCRIMINANT {
        return Err(ClassGroupError::TooLarge(d));
    }
    let unit = fundamental_unit(d)?;
    let h_plus = narrow_class_number(d)?;
    let h = wide_class_number(h_plus, unit.norm);
    let l1 = l1_value(d, mode)?;
    let (h_analytic, raw) = analytic_class_number(d, l1.value, &unit)?;
    if h_analytic != h {
        return Err(ClassGroupError::Precision { value: raw });
    }
    Ok(FieldInvariants {
        radicand: n,
        m,
        d,
        unit,
        h_plus,
        h,
        l1: l1.value,
        l1_error: l1.error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::is_fundamental_discriminant;

    #[test]
    fn fundamental_discriminant_examples() {
        assert_eq!(fundamental_discriminant(2).unwrap(), (2, 8));
        assert_eq!(fundamental_discriminant(5).unwrap(), (5, 5));
        assert_eq!(fundamental_discriminant(12).unwrap(), (3, 12));
        assert_eq!(fundamental_discriminant(33).unwrap(), (33, 33));
        assert_eq!(fundamental_discriminant(45).unwrap(), (5, 5));
        assert_eq!(fundamental_discriminant(34).unwrap(), (34, 136));
        assert_eq!(fundamental_discriminant(50).unwrap(), (2, 8));
        assert!(fundamental_discriminant(49).is_err());
        assert!(fundamental_discriminant(1).is_err());
        for n in 2..2000u128 {
            if let Ok((_, d)) = fundamental_discriminant(n) {
                assert!(is_fundamental_discriminant(d), "n = {n}");
            }
        }
    }

    #[test]
    fn class_number_examples() {
        let f = class_number(33).unwrap();
        assert_eq!((f.d, f.h), (33, 1));
        assert_eq!(f.unit.norm, 1);
        assert_eq!(f.h_plus, 2);
        let f = class_number(10).unwrap();
        assert_eq!((f.d, f.h), (40, 2));
        let f = class_number(2).unwrap();
        assert_eq!((f.d, f.h, f.h_plus), (8, 1, 1));
        let f = class_number(79).unwrap();
        assert_eq!((f.d, f.h), (316, 3));
        let f = class_number(229).unwrap();
        assert_eq!((f.d, f.h), (229, 3));
    }

    #[test]
    fn norm_minus_one_forces_equal_class_numbers() {
        for n in 2..600u128 {
            let Ok(f) = class_number(n) else { continue };
            if f.unit.norm == -1 {
                assert_eq!(f.h_plus, f.h, "n = {n}");
            } else {
                assert_eq!(f.h_plus, 2 * f.h, "n = {n}");
            }
        }
    }

    #[test]
    fn cycle_count_agrees_with_formula_across_range() {
        // class_number itself errors when the two routes disagree
        for n in 2..3000u128 {
            match class_number(n) {
                Ok(f) => assert!(f.h >= 1),
                Err(ClassGroupError::SquareDiscriminant(_)) => {}
                Err(e) => panic!("n = {n}: {e}"),
            }
        }
    }

    #[test]
    fn analytic_rejects_off_integer_values() {
        let unit = fundamental_unit(5).unwrap();
        let l1 = l1_exact(5).unwrap();
        assert_eq!(analytic_class_number(5, l1, &unit).unwrap().0, 1);
        assert!(analytic_class_number(5, l1 * 1.4, &unit).is_err());
        assert_eq!(analytic_h(5).unwrap(), 1);
        assert_eq!(analytic_h(40).unwrap(), 2);
        assert_eq!(analytic_h(33).unwrap(), 1);
        assert!(analytic_h(9).is_err());
    }

    #[test]
    fn l_value_positive_and_formula_consistent_to_ten_thousand() {
        for d in 5..=10_000u128 {
            if !crate::cfrac::is_fundamental_discriminant(d) {
                continue;
            }
            let l1 = l1_exact(d).unwrap();
            assert!(l1 > 0.0);
            let unit = fundamental_unit(d).unwrap();
            let h = wide_class_number(narrow_class_number(d).unwrap(), unit.norm);
            let raw = (d as f64).sqrt() * l1 / (2.0 * unit.ln());
            assert!((raw - h as f64).abs() < 0.25, "D = {d}");
        }
    }
}
