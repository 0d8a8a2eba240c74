//! Consecutive real quadratic fields with large class numbers.
//!
//! The radicands `d(n) + i = ∏_{j=0}^{k} (n - j)^2 - n + i`, `i = 0..=k`,
//! all have continued fractions of period dividing four, which pins down a
//! small unit in each field. This crate computes every invariant of those
//! fields exactly (continued fractions, fundamental units, discriminants,
//! L-values, class numbers), searches for tuples whose class numbers all
//! exceed a threshold, and emits certificates that can be re-checked
//! without the class group computation.
//!
//! Runnable walkthroughs live in `examples/`; the `realquad` binary wraps
//! [`cli`] for command-line use.

pub mod arith;
pub mod cfrac;
pub mod classgroup;
pub mod cli;
pub mod family;
mod decimal;
