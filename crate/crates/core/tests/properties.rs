use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use realquad::arith::{
    factor, fixed_divisor, is_perfect_square, is_prime, is_squarefree, reduced_divisor,
    squarefree_part, IntPolynomial,
};
use realquad::cfrac::{cf_expand, convergent, pell_min, verify_schinzel_pattern, QuadSurd};
use realquad::classgroup::{l1_exact, reduced_forms, rho_cycles};
use realquad::family::{certify, d_of, family_unit, shifted_decomposition, UNIT_BOUND_CONSTANT};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn squarefree_part_leaves_a_square(n in 1u128..100_000) {
        let m = squarefree_part(n).unwrap();
        prop_assert!(is_squarefree(m).unwrap());
        prop_assert_eq!(n % m, 0);
        prop_assert!(is_perfect_square(n / m));
    }

    #[test]
    fn factorization_multiplies_back(n in 1u128..(1u128 << 90)) {
        let f = factor(n).unwrap();
        prop_assert_eq!(f.product(), Some(n));
        for p in f.primes() {
            prop_assert!(is_prime(p));
        }
    }

    #[test]
    fn fixed_divisor_is_the_largest(coeffs in prop::collection::vec(-9i64..=9, 1..=7)) {
        let f = IntPolynomial::from_i64(&coeffs);
        prop_assume!(!f.is_zero());
        let b = BigInt::from(fixed_divisor(&f).unwrap());
        prop_assume!(b > BigInt::from(0));
        let values: Vec<BigInt> = (-100..=100).map(|x| f.eval_i64(x)).collect();
        prop_assert!(values.iter().all(|v| v.is_multiple_of(&b)));
        let twice = &b * 2;
        prop_assert!(!values.iter().all(|v| v.is_multiple_of(&twice)));
    }

    #[test]
    fn reduced_divisor_is_minimal(b in 1u128..1_000_000) {
        let bp = reduced_divisor(b).unwrap();
        prop_assert_eq!(b % bp, 0);
        prop_assert!(is_squarefree(b / bp).unwrap());
        for p in factor(bp).unwrap().primes() {
            prop_assert!(!is_squarefree(b / (bp / p)).unwrap());
        }
    }

    #[test]
    fn cf_states_stay_reduced(n in 2u128..10_000) {
        prop_assume!(!is_perfect_square(n));
        let root = (n as f64).sqrt();
        let (_, mut s) = QuadSurd::sqrt(n).unwrap().step();
        let period = cf_expand(&QuadSurd::sqrt(n).unwrap()).unwrap().period_len();
        for _ in 0..period {
            prop_assert!(s.p() > 0 && (s.p() as f64) < root);
            prop_assert!(s.q() > 0 && (s.q() as f64) < 2.0 * root);
            s = s.step().1;
        }
    }

    #[test]
    fn convergents_approximate(n in 2u128..1000, t in 0usize..12) {
        prop_assume!(!is_perfect_square(n));
        let e = cf_expand(&QuadSurd::sqrt(n).unwrap()).unwrap();
        let (x, y) = convergent(&e, t);
        // |x/y - √n| < 1/y^2  <=>  |x^2 - n y^2| · y - x < y √n
        let n_big = BigInt::from(n);
        let r = (&x * &x - &n_big * &y * &y).magnitude().clone();
        let lhs = BigInt::from(r) * &y - &x;
        prop_assert!(lhs < BigInt::from(0) || &lhs * &lhs < &y * &y * &n_big);
    }

    #[test]
    fn norm_parity_link(n in 2u128..1000) {
        prop_assume!(!is_perfect_square(n));
        let (_, minus) = pell_min(n).unwrap();
        let odd = cf_expand(&QuadSurd::sqrt(n).unwrap()).unwrap().period_len() % 2 == 1;
        prop_assert_eq!(minus.is_some(), odd);
    }

    #[test]
    fn cycles_ignore_order(d in 5u128..5000, seed in any::<u64>()) {
        prop_assume!((d % 4 == 0 || d % 4 == 1) && !is_perfect_square(d));
        let forms = reduced_forms(d).unwrap();
        let mut shuffled = forms.clone();
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            shuffled.swap(i, (state % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(rho_cycles(&shuffled).unwrap(), rho_cycles(&forms).unwrap());
    }

    #[test]
    fn construction_identities(k in 0u32..=5, extra in 1u64..400) {
        let n = u64::from(k) + extra;
        prop_assume!(d_of(k, n).is_ok());
        let d = d_of(k, n).unwrap();
        for i in 0..=k {
            let (a, n_i) = shifted_decomposition(k, n, i).unwrap();
            prop_assert_eq!(n_i, d + u128::from(i));
            let t = u128::from(n - u64::from(i));
            let g = a * a * t - 1;
            prop_assert_eq!(t * g, n_i);
            prop_assert_eq!(t.gcd(&g), 1);
            let (x, y) = family_unit(k, n, i).unwrap();
            prop_assert_eq!(BigInt::from(x).pow(2u32) - BigInt::from(n_i) * BigInt::from(y).pow(2u32), BigInt::from(1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certified_instances_obey_lower_bound_and_pattern(k in 0u32..=2, extra in 1u64..8) {
        let n = u64::from(k) + extra;
        prop_assume!(d_of(k, n).is_ok());
        let c = certify(k, n).unwrap();
        let log_rho_bound =
            f64::from(2 * k + 1) * (n as f64).ln() + f64::from(UNIT_BOUND_CONSTANT).ln();
        for r in &c.rows {
            let d = r.row.disc as f64;
            let l1 = if r.row.disc <= 10_000_000 { l1_exact(r.row.disc).unwrap() } else { r.l1 };
            let lower = d.sqrt() * l1 / (2.0 * log_rho_bound);
            prop_assert!(r.h as f64 >= lower - 1e-9, "h = {} < {}", r.h, lower);
            prop_assert!(r.unit.ln() <= log_rho_bound + 1e-12);
            if r.row.a >= 2 {
                let a = u64::try_from(r.row.a).unwrap();
                prop_assert!(verify_schinzel_pattern(a, n - u64::from(r.row.i)).unwrap());
            }
        }
        prop_assert!(c.unit_bound_ok);
    }
}
