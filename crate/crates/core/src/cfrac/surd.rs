use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CfError;
use crate::arith::{is_perfect_square, isqrt};

/// Radicands above this bound could overflow `P'^2` in the recurrence.
pub(crate) const MAX_RADICAND: u128 = 1 << 124;

/// The quadratic irrational `(P + √N) / Q`, kept in the normal form
/// `Q | N - P^2` so the state recurrence stays integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadSurd {
    p: i128,
    q: i128,
    n: u128,
}

impl QuadSurd {
    /// Builds `(p + √n) / q`, rescaling to `(p|q| + √(n q²)) / (q|q|)` when
    /// `q` does not divide `n - p²`.
    pub fn new(p: i128, q: i128, n: u128) -> Result<Self, CfError> {
        if q == 0 {
            return Err(CfError::ZeroDenominator);
        }
        if is_perfect_square(n) {
            return Err(CfError::SquareRadicand(n));
        }
        if n > MAX_RADICAND {
            return Err(CfError::Overflow);
        }
        let residue = p
            .checked_mul(p)
            .and_then(|p2| (n as i128).checked_sub(p2))
            .ok_or(CfError::Overflow)?;
        let mut s = Self { p, q, n };
        if residue % q != 0 {
            let aq = q.checked_abs().ok_or(CfError::Overflow)?;
            let n2 = (aq as u128)
                .checked_mul(aq as u128)
                .and_then(|q2| q2.checked_mul(n))
                .filter(|&v| v <= MAX_RADICAND)
                .ok_or(CfError::Overflow)?;
            s = Self {
                p: p.checked_mul(aq).ok_or(CfError::Overflow)?,
                q: q.checked_mul(aq).ok_or(CfError::Overflow)?,
                n: n2,
            };
        }
        Ok(s)
    }

    /// `√n` itself.
    pub fn sqrt(n: u128) -> Result<Self, CfError> {
        Self::new(0, 1, n)
    }

    pub fn p(&self) -> i128 {
        self.p
    }
    pub fn q(&self) -> i128 {
        self.q
    }
    pub fn radicand(&self) -> u128 {
        self.n
    }

    /// `floor((P + √N) / Q)`, exact.
    pub fn floor(&self) -> i128 {
        // √N is irrational, so floor(P + √N) = P + isqrt(N) and the quotient
        // never lands on an integer.
        let top = self.p + isqrt(self.n) as i128;
        if self.q > 0 {
            top.div_euclid(self.q)
        } else {
            -(top.div_euclid(-self.q) + 1)
        }
    }

    /// One continued fraction step: the partial quotient and the complete
    /// quotient that follows it.
    pub fn step(&self) -> (i128, QuadSurd) {
        let a = self.floor();
        let p = a * self.q - self.p;
        let q = (self.n as i128 - p * p) / self.q;
        debug_assert_eq!((self.n as i128 - p * p) % self.q, 0);
        (a, QuadSurd { p, q, n: self.n })
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + (self.n as f64).sqrt()) / self.q as f64
    }
}

/// Eventually periodic continued fraction of a quadratic surd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfExpansion {
    pub preperiod: Vec<i128>,
    /// Minimal period; every entry is at least 1.
    pub period: Vec<i128>,
    pub radicand: u128,
}

impl CfExpansion {
    /// Partial quotient `a_j` of the infinite expansion.
    pub fn quotient(&self, j: usize) -> i128 {
        match self.preperiod.get(j) {
            Some(&a) => a,
            None => self.period[(j - self.preperiod.len()) % self.period.len()],
        }
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// The first `len` partial quotients.
    pub fn word(&self, len: usize) -> Vec<i128> {
        (0..len).map(|j| self.quotient(j)).collect()
    }
}

/// Upper bound on the number of states `cf_expand` will visit.
pub const MAX_EXPANSION_LEN: usize = 50_000_000;

/// Expands `s`, detecting the cycle through repeated `(P, Q)` states.
pub fn cf_expand(s: &QuadSurd) -> Result<CfExpansion, CfError> {
    let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
    let mut quotients = Vec::new();
    let mut state = *s;
    loop {
        if let Some(&start) = seen.get(&(state.p, state.q)) {
            let period = quotients.split_off(start);
            return Ok(CfExpansion {
                preperiod: quotients,
                period,
                radicand: s.n,
            });
        }
        if quotients.len() >= MAX_EXPANSION_LEN {
            return Err(CfError::PeriodTooLong(s.n));
        }
        seen.insert((state.p, state.q), quotients.len());
        let (a, next) = state.step();
        quotients.push(a);
        state = next;
    }
}

/// The `t`-th convergent `p_t / q_t` of the expansion, in lowest terms.
pub fn convergent(e: &CfExpansion, t: usize) -> (BigInt, BigInt) {
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    for j in 0..=t {
        let a = BigInt::from(e.quotient(j));
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    (p, q)
}
