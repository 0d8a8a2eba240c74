use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::surd::{cf_expand, QuadSurd, MAX_EXPANSION_LEN};
use super::CfError;
use crate::arith::is_squarefree;
use crate::decimal;

/// A solution of `x^2 - N y^2 = norm` with `x, y > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "decimal")]
    pub x: BigUint,
    #[serde(with = "decimal")]
    pub y: BigUint,
    pub norm: i8,
}

impl PellSolution {
    pub fn satisfies(&self, n: u128) -> bool {
        let lhs = BigInt::from(&self.x * &self.x);
        let rhs = BigInt::from(&self.y * &self.y * BigUint::from(n));
        lhs - rhs == BigInt::from(self.norm)
    }
}

/// Walks the expansion of `(p0 + √n) / q0` and returns the first
/// `(G_i, B_i, sign)` with `Q_{i+1} = q0`, where `G_i = q0 A_i - p0 B_i` and
/// `A_i / B_i` is the `i`-th convergent. Those satisfy
/// `G_i^2 - n B_i^2 = sign · q0^2`, and the first such index gives the
/// smallest positive solution.
fn first_return(p0: i128, q0: i128, n: u128) -> Result<(BigUint, BigUint, i8), CfError> {
    let start = QuadSurd::new(p0, q0, n)?;
    debug_assert_eq!((start.p(), start.q()), (p0, q0));
    let (mut a_prev, mut a_cur) = (BigInt::zero(), BigInt::one());
    let (mut b_prev, mut b_cur) = (BigInt::one(), BigInt::zero());
    let mut state = start;
    for i in 0..MAX_EXPANSION_LEN {
        let (a, next) = state.step();
        let a = BigInt::from(a);
        let a_next = &a * &a_cur + &a_prev;
        let b_next = &a * &b_cur + &b_prev;
        a_prev = std::mem::replace(&mut a_cur, a_next);
        b_prev = std::mem::replace(&mut b_cur, b_next);
        if next.q() == q0 {
            let g = BigInt::from(q0) * &a_cur - BigInt::from(p0) * &b_cur;
            let sign = if i % 2 == 0 { -1 } else { 1 };
            let g = g.to_biguint().expect("positive Pell coordinate");
            let b = b_cur.to_biguint().expect("positive Pell coordinate");
            return Ok((g, b, sign));
        }
        state = next;
    }
    Err(CfError::PeriodTooLong(n))
}

/// Minimal positive solutions of `x^2 - N y^2 = ±1`.
///
/// The `+1` solution always exists; the `-1` solution exists exactly when
/// the period of `√N` is odd, in which case the `+1` solution is its square.
pub fn pell_min(n: u128) -> Result<(PellSolution, Option<PellSolution>), CfError> {
    let (x, y, sign) = first_return(0, 1, n)?;
    if sign == 1 {
        return Ok((PellSolution { x, y, norm: 1 }, None));
    }
    let nn = BigUint::from(n);
    let plus = PellSolution {
        x: &x * &x + &nn * &y * &y,
        y: BigUint::from(2u32) * &x * &y,
        norm: 1,
    };
    Ok((plus, Some(PellSolution { x, y, norm: -1 })))
}

pub fn is_fundamental_discriminant(d: u128) -> bool {
    if d < 5 {
        return false;
    }
    match d % 4 {
        1 => is_squarefree(d).unwrap_or(false),
        0 => {
            let m = d / 4;
            matches!(m % 4, 2 | 3) && is_squarefree(m).unwrap_or(false)
        }
        _ => false,
    }
}

/// The fundamental unit `(u + v√D) / 2` of the maximal order of
/// discriminant `D`, with `u^2 - D v^2 = 4 · norm`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundUnit {
    #[serde(with = "decimal")]
    pub u: BigUint,
    #[serde(with = "decimal")]
    pub v: BigUint,
    #[serde(rename = "D", with = "decimal")]
    pub d: u128,
    pub norm: i8,
}

impl FundUnit {
    /// Checks `u^2 - D v^2 = ±4`, the parity condition `u ≡ D v (mod 2)`,
    /// and positivity.
    pub fn is_unit(&self) -> bool {
        if self.u.is_zero() || self.v.is_zero() {
            return false;
        }
        let lhs = BigInt::from(&self.u * &self.u) - BigInt::from(&self.v * &self.v * self.d);
        let parity_ok = (&self.u % 2u32) == ((&self.v * self.d) % 2u32);
        parity_ok && lhs == BigInt::from(4 * self.norm as i32)
    }

    /// Product of two elements of the same order, both in `(u + v√D)/2` form.
    pub fn mul(&self, other: &FundUnit) -> FundUnit {
        debug_assert_eq!(self.d, other.d);
        let u = (&self.u * &other.u + &self.v * &other.v * self.d) / 2u32;
        let v = (&self.u * &other.v + &other.u * &self.v) / 2u32;
        FundUnit {
            u,
            v,
            d: self.d,
            norm: self.norm * other.norm,
        }
    }

    pub fn pow(&self, e: u32) -> FundUnit {
        assert!(e >= 1);
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Natural logarithm of `(u + v√D)/2`, the regulator when fundamental.
    pub fn ln(&self) -> f64 {
        ln_half_sum(&self.u, &self.v, self.d)
    }
}

impl fmt::Display for FundUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√{})/2", self.u, self.v, self.d)
    }
}

/// `ln((u + v√d) / 2)` for nonnegative `u`, `v`, with big inputs scaled to
/// keep 60 significant bits before converting to `f64`.
pub(crate) fn ln_half_sum(u: &BigUint, v: &BigUint, d: u128) -> f64 {
    let bits = u.bits().max(v.bits());
    let shift = bits.saturating_sub(60);
    let us = (u >> shift).to_f64().unwrap_or(0.0);
    let vs = (v >> shift).to_f64().unwrap_or(0.0);
    (us + vs * (d as f64).sqrt()).ln() + shift as f64 * std::f64::consts::LN_2
        - std::f64::consts::LN_2
}

/// Fundamental unit of the maximal order of discriminant `d`.
///
/// For `d ≡ 1 (mod 4)` this expands `(1 + √d)/2`; for `d = 4m` it expands
/// `√m` and rescales.
pub fn fundamental_unit(d: u128) -> Result<FundUnit, CfError> {
    if !is_fundamental_discriminant(d) {
        return Err(CfError::NotFundamental(d));
    }
    if d % 4 == 1 {
        let (u, v, norm) = first_return(1, 2, d)?;
        Ok(FundUnit { u, v, d, norm })
    } else {
        let (x, y, norm) = first_return(0, 1, d / 4)?;
        Ok(FundUnit {
            u: x * 2u32,
            v: y,
            d,
            norm,
        })
    }
}

/// Checks `√(A²n² - n) = [An-1; 1, 2A-2, 1, 2An-2]` with period-four
/// repetition; the minimal period may be a proper divisor of four.
pub fn verify_schinzel_pattern(a: u64, n: u64) -> Result<bool, CfError> {
    if a < 2 {
        return Err(CfError::DegenerateA(a));
    }
    let an = (a as u128) * (n as u128);
    let radicand = (an * an)
        .checked_sub(n as u128)
        .filter(|&r| r >= 2)
        .ok_or(CfError::RadicandTooSmall { a, n })?;
    let e = cf_expand(&QuadSurd::sqrt(radicand)?)?;
    let an = an as i128;
    let a = a as i128;
    let expected = [1, 2 * a - 2, 1, 2 * an - 2];
    let len = e.period.len();
    Ok(e.preperiod == [an - 1]
        && 4 % len == 0
        && (0..4).all(|j| e.period[j % len] == expected[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::isqrt;
    use crate::cfrac::convergent;

    /// Smallest `y ≥ 1` with `N y^2 + norm` a positive square, searching `y ≤ limit`.
    fn brute_pell(n: u128, norm: i128, limit: u128) -> Option<(u128, u128)> {
        (1..=limit).find_map(|y| {
            let t = (n * y * y) as i128 + norm;
            if t <= 0 {
                return None;
            }
            let x = isqrt(t as u128);
            (x * x == t as u128).then_some((x, y))
        })
    }

    fn big(x: u128) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn expansion_examples() {
        let e = cf_expand(&QuadSurd::sqrt(2).unwrap()).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![1], vec![2]));
        let e = cf_expand(&QuadSurd::sqrt(33).unwrap()).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![5], vec![1, 2, 1, 10]));
        let e = cf_expand(&QuadSurd::sqrt(34).unwrap()).unwrap();
        assert_eq!((e.preperiod, e.period), (vec![5], vec![1, 4, 1, 10]));
        assert!(matches!(QuadSurd::sqrt(49), Err(CfError::SquareRadicand(49))));
    }

    #[test]
    fn general_surds() {
        // (1 + √5)/2 is purely periodic [1; 1, 1, ...]
        let e = cf_expand(&QuadSurd::new(1, 2, 5).unwrap()).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![], vec![1]));
        // Q does not divide N - P^2: rescaled to (3 + √45)/9
        let s = QuadSurd::new(1, 3, 5).unwrap();
        assert_eq!((s.p(), s.q(), s.radicand()), (3, 9, 45));
        // negative denominator: (2 + √7)/(-3) ≈ -1.5486
        let s = QuadSurd::new(2, -3, 7).unwrap();
        assert_eq!(s.floor(), -2);
        let e = cf_expand(&s).unwrap();
        let (p, q) = convergent(&e, 40);
        let approx = p.to_f64().unwrap() / q.to_f64().unwrap();
        assert!((approx - s.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn convergent_examples() {
        let e33 = cf_expand(&QuadSurd::sqrt(33).unwrap()).unwrap();
        assert_eq!(convergent(&e33, 0), (BigInt::from(5), BigInt::from(1)));
        assert_eq!(convergent(&e33, 3), (BigInt::from(23), BigInt::from(4)));
        let e2 = cf_expand(&QuadSurd::sqrt(2).unwrap()).unwrap();
        assert_eq!(convergent(&e2, 1), (BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn pell_examples() {
        let (plus, minus) = pell_min(2).unwrap();
        assert_eq!((plus.x, plus.y), (big(3), big(2)));
        let minus = minus.unwrap();
        assert_eq!((minus.x, minus.y, minus.norm), (big(1), big(1), -1));

        let (plus, minus) = pell_min(33).unwrap();
        assert_eq!((plus.x, plus.y), (big(23), big(4)));
        assert!(minus.is_none());
        assert_eq!(brute_pell(33, 1, 100), Some((23, 4)));
        assert_eq!(brute_pell(33, -1, 10_000), None);

        let (plus, minus) = pell_min(5).unwrap();
        assert_eq!((plus.x, plus.y), (big(9), big(4)));
        assert_eq!(minus.map(|m| (m.x, m.y)), Some((big(2), big(1))));
        assert_eq!(brute_pell(5, -1, 10), Some((2, 1)));
        assert_eq!(brute_pell(5, 1, 10), Some((9, 4)));
    }

    #[test]
    fn unit_examples() {
        let e = fundamental_unit(5).unwrap();
        assert_eq!((e.u.clone(), e.v.clone(), e.norm), (big(1), big(1), -1));
        assert!((e.ln() - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-15);
        let e = fundamental_unit(8).unwrap();
        assert_eq!((e.u.clone(), e.v.clone(), e.norm), (big(2), big(1), -1));
        let e = fundamental_unit(12).unwrap();
        assert_eq!((e.u.clone(), e.v.clone(), e.norm), (big(4), big(1), 1));
        assert!(e.is_unit());
        let e = fundamental_unit(33).unwrap();
        assert_eq!((e.u.clone(), e.v.clone(), e.norm), (big(46), big(8), 1));
        assert!(matches!(fundamental_unit(20), Err(CfError::NotFundamental(20))));
        assert!(matches!(fundamental_unit(9), Err(CfError::NotFundamental(9))));
    }

    #[test]
    fn unit_powers() {
        let e = fundamental_unit(8).unwrap();
        let sq = e.pow(2);
        // (1 + √2)^2 = 3 + 2√2 = (6 + 2·√8)/2
        assert_eq!((sq.u.clone(), sq.v.clone(), sq.norm), (big(6), big(2), 1));
        assert!(sq.is_unit());
        assert!((sq.ln() - 2.0 * e.ln()).abs() < 1e-14);
    }

    #[test]
    fn schinzel_examples() {
        assert!(verify_schinzel_pattern(2, 3).unwrap());
        assert!(verify_schinzel_pattern(3, 2).unwrap());
        assert!(verify_schinzel_pattern(2, 1).unwrap());
        assert!(matches!(verify_schinzel_pattern(1, 5), Err(CfError::DegenerateA(1))));
    }
}
