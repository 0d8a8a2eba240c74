//! `L(1, χ_D)` for real primitive characters of positive fundamental
//! discriminant, by three independent routes.
//!
//! * [`l1_exact`]: the finite log-sine sum over one period, `O(D)` terms.
//! * [`l1_truncated`]: partial sums of `Σ χ(n)/n` with a partial-summation
//!   tail bound.
//! * [`l1_smoothed`]: the theta-function series, exponentially convergent
//!   after `O(√D)` terms; used where the `O(D)` sum is too slow.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::ClassGroupError;
use crate::arith::kronecker;
use crate::cfrac::is_fundamental_discriminant;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Above this discriminant [`l1_value`] switches from the log-sine sum to
/// the smoothed series.
pub const EXACT_L1_MAX_DISCRIMINANT: u128 = 10_000_000;

/// Summation strategy for the floating-point accumulators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Summation {
    /// Straight `f64` accumulation, 53-bit.
    Plain,
    /// Neumaier compensated summation; the accumulator behaves like ~106 bits.
    Compensated,
}

impl Summation {
    /// Picks the accumulator able to honour `bits` of working precision.
    pub fn for_precision(bits: u32) -> Self {
        if bits <= 53 {
            Summation::Plain
        } else {
            Summation::Compensated
        }
    }
}

/// A floating-point estimate with a rigorous-in-spirit absolute error budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct L1Value {
    pub value: f64,
    pub error_bound: f64,
}

struct Accumulator {
    mode: Summation,
    sum: f64,
    comp: f64,
    abs_sum: f64,
    terms: u64,
}

impl Accumulator {
    fn new(mode: Summation) -> Self {
        Self {
            mode,
            sum: 0.0,
            comp: 0.0,
            abs_sum: 0.0,
            terms: 0,
        }
    }

    fn add(&mut self, x: f64) {
        self.abs_sum += x.abs();
        self.terms += 1;
        match self.mode {
            Summation::Plain => self.sum += x,
            Summation::Compensated => {
                let t = self.sum + x;
                if self.sum.abs() >= x.abs() {
                    self.comp += (self.sum - t) + x;
                } else {
                    self.comp += (x - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }

    /// Accumulation error only (not the error already present in the terms).
    fn rounding_bound(&self) -> f64 {
        let u = UNIT_ROUNDOFF;
        match self.mode {
            Summation::Plain => (self.terms as f64) * u * self.abs_sum,
            Summation::Compensated => {
                2.0 * u * self.total().abs() + 4.0 * (self.terms as f64) * u * u * self.abs_sum
            }
        }
    }
}

fn require_fundamental(d: u128) -> Result<(), ClassGroupError> {
    if is_fundamental_discriminant(d) {
        Ok(())
    } else {
        Err(ClassGroupError::NotFundamental(d))
    }
}

/// `L(1, χ_D) = -(1/√D) Σ_{a=1}^{D-1} χ_D(a) log sin(πa/D)`.
pub fn l1_exact_with(d: u128, mode: Summation) -> Result<L1Value, ClassGroupError> {
    require_fundamental(d)?;
    let df = d as f64;
    let di = d as i128;
    let mut acc = Accumulator::new(mode);
    let mut term_error = 0.0;
    // χ_D is even, so pair a with D - a
    for a in 1..=(d - 1) / 2 {
        let chi = kronecker(di, a as i128);
        if chi == 0 {
            continue;
        }
        let ls = (PI * (a as f64) / df).sin().ln();
        let t = 2.0 * f64::from(chi) * ls;
        acc.add(t);
        // sin's argument carries ~3 ulp relative error, the sine and log one each
        term_error += 2.0 * UNIT_ROUNDOFF * (4.0 + ls.abs());
    }
    let sqrt_d = df.sqrt();
    let value = -acc.total() / sqrt_d;
    let error_bound =
        (acc.rounding_bound() + term_error) / sqrt_d + 2.0 * UNIT_ROUNDOFF * value.abs();
    Ok(L1Value { value, error_bound })
}

pub fn l1_exact(d: u128) -> Result<f64, ClassGroupError> {
    Ok(l1_exact_with(d, Summation::Compensated)?.value)
}

/// Partial sum `Σ_{n ≤ M} χ_D(n)/n` with `M` large enough that the tail,
/// bounded by `2·max_x |Σ_{n ≤ x} χ(n)| / (M + 1)` via partial summation, is at
/// most `tol`. Returns the value and the bound actually achieved (tail plus
/// accumulated rounding).
///
/// The character-sum maximum is computed exactly over one period and capped by
/// the Pólya–Vinogradov bound `√D log D`.
pub fn l1_truncated(d: u128, tol: f64) -> Result<L1Value, ClassGroupError> {
    if !(tol > 0.0) {
        return Err(ClassGroupError::NonPositiveTolerance(tol));
    }
    require_fundamental(d)?;
    if d > EXACT_L1_MAX_DISCRIMINANT {
        return Err(ClassGroupError::TooLarge(d));
    }
    let di = d as i128;
    let table: Vec<i8> = (0..d).map(|r| kronecker(di, r as i128)).collect();
    let mut partial = 0i64;
    let mut max_partial = 0i64;
    for &c in &table[1..] {
        partial += i64::from(c);
        max_partial = max_partial.max(partial.abs());
    }
    debug_assert_eq!(partial + i64::from(table[0]), 0);
    let df = d as f64;
    let pv = df.sqrt() * df.ln();
    let smax = (max_partial as f64).min(pv).max(1.0);
    let m = (2.0 * smax / tol).ceil() as u64;

    let mut acc = Accumulator::new(Summation::Compensated);
    let mut r = 0usize;
    for n in 1..=m {
        r += 1;
        if r == table.len() {
            r = 0;
        }
        let c = table[r];
        if c != 0 {
            acc.add(f64::from(c) / n as f64);
        }
    }
    let tail = 2.0 * smax / (m as f64 + 1.0);
    let rounding = acc.rounding_bound() + UNIT_ROUNDOFF * acc.abs_sum;
    Ok(L1Value {
        value: acc.total(),
        error_bound: tail + rounding,
    })
}

/// Exponential integral `E1(x)` for `x > 0`.
pub(crate) fn exp_int_e1(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            let contrib = term / k as f64;
            sum += contrib;
            if contrib.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        -EULER_GAMMA - x.ln() - sum
    } else {
        // continued fraction, modified Lentz
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// `L(1, χ_D) = Σ χ(n) [erfc(n√(π/D))/n + E1(πn²/D)/√D]`, valid for even
/// primitive real characters (Gauss sum `√D`). Terms decay like
/// `exp(-πn²/D)`, so about `√(D log(1/tol))` of them are needed.
pub fn l1_smoothed(d: u128, tol: f64) -> Result<L1Value, ClassGroupError> {
    if !(tol > 0.0) {
        return Err(ClassGroupError::NonPositiveTolerance(tol));
    }
    require_fundamental(d)?;
    let df = d as f64;
    let sqrt_d = df.sqrt();
    let scale = (PI / df).sqrt();
    let tail_after = |m: f64| {
        // term_n ≤ e^{-πn²/D} · 2√D/(π n²) for n > m
        let first = (-(PI * (m + 1.0) * (m + 1.0)) / df).exp();
        let ratio = (-(PI * (2.0 * m + 3.0)) / df).exp();
        2.0 * sqrt_d / (PI * m * m) * first / (1.0 - ratio)
    };
    let mut m = (df * (1.0 / tol).ln().max(1.0) / PI).sqrt().ceil().max(1.0);
    while tail_after(m) > tol / 2.0 {
        m *= 1.25;
    }
    let m = m as u64;
    let di = d as i128;
    let mut acc = Accumulator::new(Summation::Compensated);
    let mut term_error = 0.0;
    for n in 1..=m {
        let chi = kronecker(di, n as i128);
        if chi == 0 {
            continue;
        }
        let nf = n as f64;
        let x = nf * scale;
        let t = erfc(x) / nf + exp_int_e1(x * x) / sqrt_d;
        acc.add(f64::from(chi) * t);
        term_error += 1e-13 * t.abs();
    }
    Ok(L1Value {
        value: acc.total(),
        error_bound: tail_after(m as f64) + acc.rounding_bound() + term_error,
    })
}

/// `L(1, χ_D)` by the log-sine sum up to [`EXACT_L1_MAX_DISCRIMINANT`], and by
/// the smoothed series (tolerance `1e-12`) beyond it.
pub fn l1_value(d: u128, mode: Summation) -> Result<L1Value, ClassGroupError> {
    if d <= EXACT_L1_MAX_DISCRIMINANT {
        l1_exact_with(d, mode)
    } else {
        l1_smoothed(d, 1e-12)
    }
}
