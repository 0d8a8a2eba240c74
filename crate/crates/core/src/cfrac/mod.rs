//! Periodic continued fractions of quadratic irrationals, Pell equations,
//! and fundamental units of real quadratic fields.
//!
//! Everything here is exact integer arithmetic. The state recurrence on
//! `(P, Q)` uses `i128` (radicands up to 2^124); convergents and units, which
//! grow exponentially in the period length, are arbitrary precision.

mod surd;
mod units;

pub use surd::{convergent, cf_expand, CfExpansion, QuadSurd, MAX_EXPANSION_LEN};
pub use units::{
    fundamental_unit, is_fundamental_discriminant, pell_min, verify_schinzel_pattern, FundUnit,
    PellSolution,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfError {
    #[error("radicand {0} is a perfect square")]
    SquareRadicand(u128),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("arithmetic overflow in the state recurrence")]
    Overflow,
    #[error("expansion of radicand {0} exceeds the period length limit")]
    PeriodTooLong(u128),
    #[error("{0} is not a positive fundamental discriminant")]
    NotFundamental(u128),
    #[error("pattern parameter A = {0} must be at least 2")]
    DegenerateA(u64),
    #[error("A^2 n^2 - n must be at least 2 (A = {a}, n = {n})")]
    RadicandTooSmall { a: u64, n: u64 },
}
