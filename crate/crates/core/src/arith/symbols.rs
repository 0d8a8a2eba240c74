use num_bigint::BigUint;
use num_traits::One;

/// Kronecker symbol `(d / n)`, completely multiplicative in `n`.
///
/// Agrees with the Legendre symbol for odd primes `n`, with
/// `(d/2) = ±1` according to `d ≡ ±1` or `±3 (mod 8)`, and with
/// `(d/-1) = sign(d)`.
pub fn kronecker(d: i128, n: i128) -> i8 {
    if n == 0 {
        return i8::from(d == 1 || d == -1);
    }
    let mut result: i8 = if n < 0 && d < 0 { -1 } else { 1 };
    let mut n = n.unsigned_abs();

    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        let r8 = d.rem_euclid(8);
        if twos % 2 == 1 && (r8 == 3 || r8 == 5) {
            result = -result;
        }
        n >>= twos;
    }
    if n == 1 {
        return result;
    }
    result * jacobi(d.rem_euclid(n as i128) as u128, n)
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(mut a: u128, mut n: u128) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut result = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        // acc * (n - j) is divisible by j + 1 at every step
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legendre_by_squares(d: i128, p: i128) -> i8 {
        let r = d.rem_euclid(p);
        if r == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(5, 5), 0);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(5, 4), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(3, -1), 1);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(4, 0), 0);
    }

    #[test]
    fn matches_legendre_for_odd_primes() {
        for p in [3i128, 5, 7, 11, 13, 17, 19, 23, 101] {
            for d in -60..60 {
                assert_eq!(kronecker(d, p), legendre_by_squares(d, p), "({d}/{p})");
            }
        }
    }

    #[test]
    fn multiplicative_in_denominator() {
        for d in -200i128..=200 {
            for m in 1..=60 {
                for n in [1i128, 2, 3, 4, 7, 8, 12, 45, 97] {
                    assert_eq!(
                        kronecker(d, m * n),
                        kronecker(d, m) * kronecker(d, n),
                        "d={d} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(8, 2), BigUint::from(28u32));
        assert_eq!(binomial(17, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::default());
        assert_eq!(binomial(2000, 5), BigUint::from(265_335_665_000_400u64));
    }
}
