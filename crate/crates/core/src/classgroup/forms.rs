//! Reduced indefinite binary quadratic forms and their rho-cycles.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ClassGroupError;
use crate::arith::{factor, is_perfect_square, isqrt};

/// Discriminants above this bound are refused by the cycle enumeration;
/// the reduced-form set grows like `√D` in both time and memory.
pub const MAX_FORM_DISCRIMINANT: u128 = 100_000_000_000;

/// The form `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl QuadForm {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `0 < b < √D` and `√D - b < 2|a| < √D + b`, decided without roots.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d <= 0 || self.a == 0 || self.c == 0 {
            return false;
        }
        let b = self.b;
        let two_a = 2 * self.a.abs();
        // b < √D  <=>  b^2 < D for b > 0
        let b_ok = b > 0 && b * b < d;
        // √D - b < 2|a|  <=>  (2|a| + b)^2 > D
        let lower = (two_a + b) * (two_a + b) > d;
        // 2|a| < √D + b  <=>  2|a| - b < √D
        let upper = two_a - b <= 0 || (two_a - b) * (two_a - b) < d;
        b_ok && lower && upper
    }

    /// The reduction operator: `(c, r, (r^2 - D) / 4c)` with `r ≡ -b (mod 2|c|)`
    /// taken as the largest such integer below `√D`.
    pub fn rho(&self) -> QuadForm {
        let d = self.discriminant();
        let s = isqrt(d as u128) as i128;
        let m = 2 * self.c.abs();
        let r = s - (s + self.b).rem_euclid(m);
        let c = (r * r - d) / (4 * self.c);
        debug_assert_eq!((r * r - d) % (4 * self.c), 0);
        QuadForm::new(self.c, r, c)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub(crate) fn check_discriminant(d: u128) -> Result<i128, ClassGroupError> {
    if d == 0 || !(d % 4 == 0 || d % 4 == 1) {
        return Err(ClassGroupError::InvalidDiscriminant(d));
    }
    if is_perfect_square(d) {
        return Err(ClassGroupError::SquareDiscriminant(d));
    }
    if d > MAX_FORM_DISCRIMINANT {
        return Err(ClassGroupError::TooLarge(d));
    }
    Ok(d as i128)
}

/// Every primitive reduced form of discriminant `d`, sorted.
///
/// For each `b ≡ d (mod 2)` with `0 < b < √d`, the product `a·(-c)` equals
/// `(d - b^2)/4`, so `|a|` runs over the divisors of that number inside the
/// reduction window and both signs of `a` are taken.
pub fn reduced_forms(d: u128) -> Result<Vec<QuadForm>, ClassGroupError> {
    let di = check_discriminant(d)?;
    let s = isqrt(d) as i128;
    let mut out = Vec::new();
    let window = |alpha: i128, b: i128| {
        let two_a = 2 * alpha;
        (two_a + b) * (two_a + b) > di && (two_a - b <= 0 || (two_a - b) * (two_a - b) < di)
    };
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let t = (di - b * b) / 4;
        let mut push = |alpha: i128| {
            let form = QuadForm::new(alpha, b, -t / alpha);
            if form.is_primitive() {
                out.push(form);
                out.push(QuadForm::new(-alpha, b, t / alpha));
            }
        };
        // the admissible |a| lie in ((√d - b)/2, (√d + b)/2), an interval of
        // length b; scan it directly when short, otherwise go through divisors
        if b < 2048 {
            let lo = ((s - b) / 2).max(1);
            let hi = (s + b) / 2 + 1;
            for alpha in lo..=hi {
                if t % alpha == 0 && window(alpha, b) {
                    push(alpha);
                }
            }
        } else {
            let divisors = factor(t as u128).expect("t > 0").divisors();
            for alpha in divisors {
                let alpha = alpha as i128;
                if window(alpha, b) {
                    push(alpha);
                }
            }
        }
        b += 2;
    }
    out.sort_unstable();
    Ok(out)
}

/// Partitions `forms` into rho-cycles. Each cycle starts at its smallest
/// form and cycles are listed in order of those starting forms, so the result
/// does not depend on the order of the input.
pub fn rho_cycles(forms: &[QuadForm]) -> Result<Vec<Vec<QuadForm>>, ClassGroupError> {
    let mut sorted = forms.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let index: HashMap<QuadForm, usize> =
        sorted.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut seen = vec![false; sorted.len()];
    let mut cycles = Vec::new();
    for start in 0..sorted.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(sorted[j]);
            let next = sorted[j].rho();
            j = *index
                .get(&next)
                .ok_or(ClassGroupError::NotClosed(sorted[j], next))?;
        }
        if j != start {
            return Err(ClassGroupError::NotClosed(sorted[start], sorted[j]));
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Narrow class number `h⁺(d)`: the number of rho-cycles of reduced forms.
pub fn narrow_class_number(d: u128) -> Result<u64, ClassGroupError> {
    let forms = reduced_forms(d)?;
    Ok(rho_cycles(&forms)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reduced forms by scanning every `(a, b)` pair in the window.
    fn brute_reduced(d: i128) -> Vec<QuadForm> {
        let mut out = Vec::new();
        let s = isqrt(d as u128) as i128;
        for b in 1..=s {
            for a in -2 * s..=2 * s {
                if a == 0 || (b * b - d) % (4 * a) != 0 {
                    continue;
                }
                let f = QuadForm::new(a, b, (b * b - d) / (4 * a));
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn reduced_form_examples() {
        assert_eq!(
            reduced_forms(5).unwrap(),
            vec![QuadForm::new(-1, 1, 1), QuadForm::new(1, 1, -1)]
        );
        assert_eq!(
            reduced_forms(8).unwrap(),
            vec![QuadForm::new(-1, 2, 1), QuadForm::new(1, 2, -1)]
        );
        // b = 2: |a| = 3; b = 4: |a| = 2, 3; b = 6: |a| = 1; each with both signs
        let f40 = reduced_forms(40).unwrap();
        assert_eq!(f40.len(), 8);
        let cycles = rho_cycles(&f40).unwrap();
        assert_eq!(cycles.len(), 2);
        let holds = |f: QuadForm| cycles.iter().position(|c| c.contains(&f)).unwrap();
        assert_ne!(holds(QuadForm::new(1, 6, -1)), holds(QuadForm::new(2, 4, -3)));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in 5..3000u128 {
            if !(d % 4 == 0 || d % 4 == 1) || is_perfect_square(d) {
                continue;
            }
            assert_eq!(reduced_forms(d).unwrap(), brute_reduced(d as i128), "D = {d}");
        }
    }

    #[test]
    fn divisor_path_matches_window_scan() {
        // b crosses the 2048 switch for D above ~4.2 million
        let d = 4_200_029u128; // ≡ 1 mod 4, not a square
        let forms = reduced_forms(d).unwrap();
        assert!(forms.iter().any(|f| f.b >= 2048));
        assert!(forms.iter().all(|f| f.is_reduced() && f.discriminant() == d as i128));
        let h = rho_cycles(&forms).unwrap().len();
        assert!(h >= 1);
    }

    #[test]
    fn narrow_class_number_examples() {
        assert_eq!(narrow_class_number(5).unwrap(), 1);
        assert_eq!(narrow_class_number(40).unwrap(), 2);
        assert_eq!(narrow_class_number(12).unwrap(), 2);
        assert_eq!(narrow_class_number(8).unwrap(), 1);
        assert!(matches!(narrow_class_number(7), Err(ClassGroupError::InvalidDiscriminant(7))));
        assert!(matches!(narrow_class_number(16), Err(ClassGroupError::SquareDiscriminant(16))));
    }

    #[test]
    fn rho_is_a_bijection_on_reduced_forms() {
        for d in 5..10_000u128 {
            if !(d % 4 == 0 || d % 4 == 1) || is_perfect_square(d) {
                continue;
            }
            let forms = reduced_forms(d).unwrap();
            let mut images: Vec<QuadForm> = forms.iter().map(QuadForm::rho).collect();
            assert!(images.iter().all(QuadForm::is_reduced), "D = {d}");
            images.sort_unstable();
            assert_eq!(images, forms, "D = {d}");
        }
    }

    #[test]
    fn cycle_count_ignores_input_order() {
        let mut forms = reduced_forms(4 * 79).unwrap();
        let expected = rho_cycles(&forms).unwrap();
        forms.reverse();
        forms.rotate_left(3);
        assert_eq!(rho_cycles(&forms).unwrap(), expected);
    }
}
