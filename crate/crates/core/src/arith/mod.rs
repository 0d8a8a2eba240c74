//! Exact integer and polynomial number theory shared by the other modules.

mod factor;
pub(crate) mod modular;
mod poly;
mod symbols;

pub(crate) use factor::merge_exponents;
pub use factor::{
    factor, is_perfect_square, is_prime, is_squarefree, isqrt, isqrt_signed, squarefree_part,
    Factorization,
};
pub use poly::{fixed_divisor, poly_gcd_squarefree, reduced_divisor, IntPolynomial};
pub use symbols::{binomial, jacobi, kronecker};

use num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero has no factorization")]
    Zero,
    #[error("negative input {0}")]
    Negative(i128),
    #[error("the zero polynomial has no fixed divisor")]
    ZeroPolynomial,
    #[error("value exceeds 128-bit range")]
    Overflow,
}

/// Floor square root of an arbitrary-size integer.
pub fn isqrt_big(n: &BigUint) -> BigUint {
    n.sqrt()
}
