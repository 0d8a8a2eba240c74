use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::modular::{Direct, ModRing, Montgomery};
use super::ArithError;

/// Floor of the square root of `n`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // f64 gets within a couple of units; the loops below make it exact.
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Signed front end for [`isqrt`]; negative radicands are rejected.
pub fn isqrt_signed(n: i128) -> Result<i128, ArithError> {
    if n < 0 {
        return Err(ArithError::Negative(n));
    }
    Ok(isqrt(n as u128) as i128)
}

pub fn is_perfect_square(n: u128) -> bool {
    // squares mod 64 occupy 12 residues; filters most non-squares early
    const SQ64: u64 = 0x0202_0212_0203_0213;
    if (SQ64 >> (n & 63)) & 1 == 0 {
        return false;
    }
    let r = isqrt(n);
    r * r == n
}

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

const TRIAL_BOUND: u128 = 4096;

fn strong_probable_prime<R: ModRing>(ring: &R, n: u128, base: u128) -> bool {
    let n_minus_1 = n - 1;
    let s = n_minus_1.trailing_zeros();
    let d = n_minus_1 >> s;
    let one = ring.one();
    let minus_one = ring.enter(n_minus_1);
    let mut x = ring.pow(ring.enter(base % n), d);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = ring.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Strong-pseudoprime primality test.
///
/// Deterministic below 3.3·10^24 (first 13 prime bases); above that the
/// answer is probabilistic with 24 fixed bases plus 8 derived from `n`.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 97 * 97 {
        return true;
    }
    if n <= u64::MAX as u128 {
        let ring = Direct::new(n as u64);
        // deterministic for all n < 2^64
        return [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
            .iter()
            .all(|&a| strong_probable_prime(&ring, n, a));
    }
    let ring = Montgomery::new(n);
    const DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;
    if n < DETERMINISTIC_LIMIT {
        return SMALL_PRIMES[..13]
            .iter()
            .all(|&a| strong_probable_prime(&ring, n, a as u128));
    }
    if !SMALL_PRIMES[..24]
        .iter()
        .all(|&a| strong_probable_prime(&ring, n, a as u128))
    {
        return false;
    }
    let mut state = n ^ 0x9e37_79b9_7f4a_7c15_f39c_c060_5ced_c834;
    (0..8).all(|_| {
        state = splitmix(state);
        strong_probable_prime(&ring, n, 2 + state % (n - 3))
    })
}

fn splitmix(x: u128) -> u128 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Brent's variant of Pollard rho over the given ring. Returns a nontrivial
/// factor or `None` when this choice of constant cycles without one.
fn rho_brent<R: ModRing>(ring: &R, c: u128, start: u128) -> Option<u128> {
    let n = ring.modulus();
    let c = ring.enter(c);
    let f = |x: u128| ring.add(ring.mul(x, x), c);
    const BATCH: u64 = 128;

    let mut y = ring.enter(start);
    let mut x = y;
    let mut ys = y;
    let mut q = ring.one();
    let mut g = 1u128;
    let mut r: u64 = 1;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = ring.mul(q, ring.sub(x, y));
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        // batch overshot; replay one step at a time
        loop {
            ys = f(ys);
            g = ring.sub(x, ys).gcd(&n);
            if g != 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn find_factor(n: u128) -> u128 {
    debug_assert!(n > 3 && !is_prime(n));
    if n % 2 == 0 {
        return 2;
    }
    let r = isqrt(n);
    if r * r == n {
        return r;
    }
    for c in 1u128.. {
        let hit = if n <= u64::MAX as u128 {
            rho_brent(&Direct::new(n as u64), c, 2 + c)
        } else {
            rho_brent(&Montgomery::new(n), c, 2 + c)
        };
        if let Some(d) = hit {
            return d;
        }
    }
    unreachable!()
}

/// Complete prime factorization of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    value: u128,
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u128 {
        self.value
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent(&self, p: u128) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(0, |i| self.factors[i].1)
    }

    /// Product of the primes dividing the value to an odd power.
    pub fn squarefree_part(&self) -> u128 {
        self.factors
            .iter()
            .filter(|&&(_, e)| e % 2 == 1)
            .map(|&(p, _)| p)
            .product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Squarefree kernel: product of the distinct primes.
    pub fn radical(&self) -> u128 {
        self.primes().product()
    }

    /// All positive divisors, unsorted.
    pub fn divisors(&self) -> Vec<u128> {
        let mut out = vec![1u128];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                for j in 0..len {
                    out.push(out[j] * pk);
                }
            }
        }
        out
    }

    /// Multiplies two factorizations by merging exponents.
    pub fn merge(&self, other: &Factorization) -> Option<Factorization> {
        let value = self.value.checked_mul(other.value)?;
        Some(Factorization {
            value,
            factors: merge_exponents(&self.factors, &other.factors),
        })
    }

    /// Recomputes the product from the listed prime powers.
    pub fn product(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &(p, e)| {
            (0..e).try_fold(acc, |a, _| a.checked_mul(p))
        })
    }
}

pub(crate) fn merge_exponents(a: &[(u128, u32)], b: &[(u128, u32)]) -> Vec<(u128, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(p, e)), Some(&(q, f))) if p == q => {
                out.push((p, e + f));
                i += 1;
                j += 1;
            }
            (Some(&(p, e)), Some(&(q, _))) if p < q => {
                out.push((p, e));
                i += 1;
            }
            (Some(_), Some(&(q, f))) => {
                out.push((q, f));
                j += 1;
            }
            (Some(&pe), None) => {
                out.push(pe);
                i += 1;
            }
            (None, Some(&qf)) => {
                out.push(qf);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (idx, &(p, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n` by trial division up to a small bound, then Pollard rho.
pub fn factor(n: u128) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut primes: Vec<u128> = Vec::new();
    let mut rest = n;
    let mut push_trial = |p: u128, rest: &mut u128| {
        while *rest % p == 0 {
            *rest /= p;
            primes.push(p);
        }
    };
    push_trial(2, &mut rest);
    push_trial(3, &mut rest);
    let mut p = 5u128;
    while p < TRIAL_BOUND && p * p <= rest {
        push_trial(p, &mut rest);
        push_trial(p + 2, &mut rest);
        p += 6;
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        // every prime factor left here exceeds the trial bound
        if m < TRIAL_BOUND * TRIAL_BOUND || is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = find_factor(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { value: n, factors })
}

pub fn squarefree_part(n: u128) -> Result<u128, ArithError> {
    Ok(factor(n)?.squarefree_part())
}

pub fn is_squarefree(n: u128) -> Result<bool, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    for &p in &SMALL_PRIMES {
        let p2 = (p * p) as u128;
        if n % p2 == 0 {
            return Ok(false);
        }
    }
    Ok(factor(n)?.is_squarefree())
}
