//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored constant term first and kept trimmed, so the
//! zero polynomial is the empty vector and every other polynomial has a
//! nonzero leading coefficient.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::factor;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: impl Into<BigInt>) -> Self {
        Self::new(vec![-root.into(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| &acc * self)
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`: some `lc(divisor)^j · self`
    /// reduced modulo `divisor`. Only the class up to scalars matters for gcds.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("division by zero polynomial");
        let lb = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = dr - db;
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lb).collect();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                coeffs[j + shift] -= c * &lr;
            }
            r = Self::new(coeffs);
            debug_assert!(r.degree().map_or(true, |d| d < dr));
        }
        r
    }

    /// Gcd over the rationals, returned as a primitive integer polynomial
    /// with positive leading coefficient (primitive remainder sequence).
    pub fn gcd_rational(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + rhs.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        self + &rhs.scale(&BigInt::from(-1))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.sign() == Sign::Minus, c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Largest integer dividing `f(n)` for every integer `n`.
///
/// A degree-`d` integer-valued polynomial is an integer combination of the
/// binomials `C(x, j)`, `j ≤ d`, whose coefficients are the forward
/// differences `Δ^j f(0)`. Each difference is an integer combination of
/// `f(0), …, f(d)` and vice versa, so the gcd of those `d + 1` values equals
/// the gcd of the binomial-basis coefficients, which is the fixed divisor.
pub fn fixed_divisor(f: &IntPolynomial) -> Result<BigUint, ArithError> {
    let deg = f.degree().ok_or(ArithError::ZeroPolynomial)?;
    let mut g = BigInt::zero();
    for x in 0..=deg as i64 {
        g = g.gcd(&f.eval_i64(x));
    }
    Ok(g.magnitude().clone())
}

/// Smallest divisor `B'` of `b` with `b / B'` squarefree, i.e. `b / rad(b)`.
pub fn reduced_divisor(b: u128) -> Result<u128, ArithError> {
    let rad = factor(b)?.radical();
    Ok(b / rad)
}

/// True iff `f` has no repeated complex root, i.e. `gcd(f, f')` is constant.
pub fn poly_gcd_squarefree(f: &IntPolynomial) -> Result<bool, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let g = f.gcd_rational(&f.derivative());
    Ok(g.degree() == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = IntPolynomial::from_i64(&[1, 1]); // x + 1
        let sq = &p * &p;
        assert_eq!(sq, IntPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(sq.eval_i64(3), big(16));
        assert_eq!((&sq - &sq).degree(), None);
        assert_eq!(sq.derivative(), IntPolynomial::from_i64(&[2, 2]));
        assert_eq!(format!("{}", IntPolynomial::from_i64(&[-1, 0, 3, -1])), "-x^3 + 3x^2 - 1");
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let a = &IntPolynomial::linear(2) * &IntPolynomial::linear(-3);
        let b = &IntPolynomial::linear(2) * &IntPolynomial::from_i64(&[5, 0, 7]);
        assert_eq!(a.gcd_rational(&b), IntPolynomial::linear(2));
        let c = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(a.gcd_rational(&c).degree(), Some(0));
    }

    #[test]
    fn squarefree_polynomial_examples() {
        assert!(!poly_gcd_squarefree(&IntPolynomial::from_i64(&[0, 0, 1])).unwrap());
        assert!(poly_gcd_squarefree(&IntPolynomial::from_i64(&[0, -1, 1])).unwrap());
        assert!(poly_gcd_squarefree(&IntPolynomial::constant(7)).unwrap());
        let cube = IntPolynomial::linear(4).pow(3);
        assert!(!poly_gcd_squarefree(&(&cube * &IntPolynomial::linear(1))).unwrap());
        assert!(poly_gcd_squarefree(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn fixed_divisor_examples() {
        let f = IntPolynomial::from_i64(&[0, 1, 1]);
        assert_eq!(fixed_divisor(&f).unwrap(), BigUint::from(2u32));
        assert_eq!(fixed_divisor(&IntPolynomial::from_i64(&[0, 1])).unwrap(), BigUint::from(1u32));
        // x(x+1)(x+2) is always divisible by 6
        let f = &(&IntPolynomial::linear(0) * &IntPolynomial::linear(-1)) * &IntPolynomial::linear(-2);
        assert_eq!(fixed_divisor(&f).unwrap(), BigUint::from(6u32));
        assert_eq!(fixed_divisor(&IntPolynomial::constant(-12)).unwrap(), BigUint::from(12u32));
        assert!(fixed_divisor(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn reduced_divisor_examples() {
        assert_eq!(reduced_divisor(4).unwrap(), 2);
        assert_eq!(reduced_divisor(12).unwrap(), 2);
        assert_eq!(reduced_divisor(6).unwrap(), 1);
        assert_eq!(reduced_divisor(1).unwrap(), 1);
        assert_eq!(reduced_divisor(72).unwrap(), 12);
    }
}
