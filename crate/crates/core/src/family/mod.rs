//! The family `d(n) = ∏_{j=0}^{k} (n-j)^2 - n` of `k+1` consecutive radicands
//! `d, d+1, ..., d+k`, each carrying an explicit Pell solution, together with
//! the certificates, searches and polynomial scans built on it.

mod certify;
mod conjecture;
mod units;

pub use certify::{
    certify, certify_with, discriminant_bound_check, theorem1_search, CertifiedRow,
    FamilyCertificate, SearchOutcome, SkippedInstance,
};
pub use conjecture::{
    conjecture_constants, conjecture_poly, conjecture_scan, remark1_k_bound,
    squarefree_root_check, ScanSummary,
};
pub use units::{
    certify_units, unit_bound_holds, unit_power_check, unit_relation, UnitCertificate,
    UnitRelation, UNIT_BOUND_CONSTANT,
};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{factor, ArithError, Factorization};
use crate::cfrac::CfError;
use crate::classgroup::ClassGroupError;
use crate::decimal;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("n must exceed k (k = {k}, n = {n})")]
    NNotAboveK { k: u32, n: u64 },
    #[error("index i = {i} outside 0..={k}")]
    IndexOutOfRange { k: u32, i: u32 },
    #[error("d({k}, {n}) = {d} is below 2")]
    DegenerateD { k: u32, n: u64, d: u128 },
    #[error("radicand d + {i} is a perfect square for k = {k}, n = {n}")]
    SquareRadicand { k: u32, n: u64, i: u32 },
    #[error("family values for k = {k}, n = {n} overflow 128 bits")]
    Overflow { k: u32, n: u64 },
    #[error("no power ε^m with m ≤ 64 equals the family unit (k = {k}, n = {n}, i = {i})")]
    UnitPowerNotFound { k: u32, n: u64, i: u32 },
    #[error("eps must lie in (0, 0.1), got {0}")]
    InvalidEps(f64),
    #[error("n must be at least 3, got {0}")]
    NTooSmall(u64),
    #[error("empty n range {lo}..={hi}")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("certificate check `{check}` failed at row {row:?}")]
    CertificateMismatch { check: &'static str, row: Option<u32> },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
}

fn overflow(k: u32, n: u64) -> FamilyError {
    FamilyError::Overflow { k, n }
}

/// `d(n) = ∏_{j=0}^{k} (n-j)^2 - n`.
pub fn d_of(k: u32, n: u64) -> Result<u128, FamilyError> {
    if n <= u64::from(k) {
        return Err(FamilyError::NNotAboveK { k, n });
    }
    let mut prod: u128 = 1;
    for j in 0..=u64::from(k) {
        let t = u128::from(n - j);
        prod = prod
            .checked_mul(t)
            .and_then(|p| p.checked_mul(t))
            .ok_or_else(|| overflow(k, n))?;
    }
    let d = prod - u128::from(n);
    if d < 2 {
        return Err(FamilyError::DegenerateD { k, n, d });
    }
    Ok(d)
}

fn check_index(k: u32, n: u64, i: u32) -> Result<(), FamilyError> {
    if n <= u64::from(k) {
        return Err(FamilyError::NNotAboveK { k, n });
    }
    if i > k {
        return Err(FamilyError::IndexOutOfRange { k, i });
    }
    Ok(())
}

/// `A_i = ∏_{j≠i} (n-j)`.
pub fn a_i(k: u32, n: u64, i: u32) -> Result<u128, FamilyError> {
    check_index(k, n, i)?;
    (0..=k)
        .filter(|&j| j != i)
        .try_fold(1u128, |acc, j| acc.checked_mul(u128::from(n - u64::from(j))))
        .ok_or_else(|| overflow(k, n))
}

/// `(A_i, N_i)` with `N_i = A_i^2 (n-i)^2 - (n-i) = d(n) + i`.
pub fn shifted_decomposition(k: u32, n: u64, i: u32) -> Result<(u128, u128), FamilyError> {
    let a = a_i(k, n, i)?;
    let t = u128::from(n - u64::from(i));
    let big = a
        .checked_mul(t)
        .and_then(|at| at.checked_mul(at))
        .ok_or_else(|| overflow(k, n))?;
    let n_i = big - t;
    let d = d_of(k, n)?;
    assert_eq!(n_i, d + u128::from(i), "shifted decomposition broke for k={k} n={n} i={i}");
    Ok((a, n_i))
}

/// The explicit solution `(x, y) = (2 A_i^2 (n-i) - 1, 2 A_i)` of
/// `x^2 - N_i y^2 = 1`.
pub fn family_unit(k: u32, n: u64, i: u32) -> Result<(u128, u128), FamilyError> {
    let (a, n_i) = shifted_decomposition(k, n, i)?;
    let t = u128::from(n - u64::from(i));
    let x = a
        .checked_mul(a)
        .and_then(|a2| a2.checked_mul(t))
        .and_then(|v| v.checked_mul(2))
        .ok_or_else(|| overflow(k, n))?
        - 1;
    let y = a.checked_mul(2).ok_or_else(|| overflow(k, n))?;
    assert!(pell_identity(x, y, n_i), "x^2 - N y^2 != 1 for k={k} n={n} i={i}");
    Ok((x, y))
}

pub(crate) fn pell_identity(x: u128, y: u128, n: u128) -> bool {
    let x = BigUint::from(x);
    let y = BigUint::from(y);
    &x * &x == &y * &y * n + 1u32
}

/// One radicand of the family with its explicit unit and field data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub i: u32,
    #[serde(rename = "A_i", with = "decimal")]
    pub a: u128,
    #[serde(rename = "x_i", with = "decimal")]
    pub x: u128,
    #[serde(rename = "y_i", with = "decimal")]
    pub y: u128,
    #[serde(rename = "N_i", with = "decimal")]
    pub radicand: u128,
    /// Squarefree kernel of `N_i`.
    #[serde(rename = "m_i", with = "decimal")]
    pub m: u128,
    #[serde(rename = "D_i", with = "decimal")]
    pub disc: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub k: u32,
    pub n: u64,
    #[serde(with = "decimal")]
    pub d: u128,
    pub rows: Vec<FamilyRow>,
}

/// Factorization of `N_i = (n-i) · (A_i^2 (n-i) - 1)`, assembled from the two
/// coprime factors.
pub fn factor_shifted(k: u32, n: u64, i: u32) -> Result<Factorization, FamilyError> {
    let a = a_i(k, n, i)?;
    let t = u128::from(n - u64::from(i));
    let g = a
        .checked_mul(a)
        .and_then(|a2| a2.checked_mul(t))
        .ok_or_else(|| overflow(k, n))?
        - 1;
    if g == 0 {
        return Err(FamilyError::DegenerateD { k, n, d: 0 });
    }
    debug_assert_eq!(t.gcd(&g), 1);
    let ft = factor(t)?;
    let fg = factor(g)?;
    ft.merge(&fg).ok_or_else(|| overflow(k, n))
}

/// `(m, D)` from a factorization: the product of primes to odd powers, and
/// the field discriminant.
pub(crate) fn kernel_and_discriminant(f: &Factorization) -> Option<(u128, u128)> {
    let m = f.squarefree_part();
    let d = if m % 4 == 1 { m } else { m.checked_mul(4)? };
    Some((m, d))
}

pub(crate) fn family_row(k: u32, n: u64, i: u32) -> Result<FamilyRow, FamilyError> {
    let (a, radicand) = shifted_decomposition(k, n, i)?;
    let (x, y) = family_unit(k, n, i)?;
    let f = factor_shifted(k, n, i)?;
    let (m, disc) = kernel_and_discriminant(&f).ok_or_else(|| overflow(k, n))?;
    if m == 1 {
        return Err(FamilyError::SquareRadicand { k, n, i });
    }
    Ok(FamilyRow {
        i,
        a,
        x,
        y,
        radicand,
        m,
        disc,
    })
}

impl FamilyInstance {
    /// Builds every row, factoring each `N_i` through its coprime split.
    pub fn new(k: u32, n: u64) -> Result<Self, FamilyError> {
        let d = d_of(k, n)?;
        let rows = (0..=k)
            .map(|i| family_row(k, n, i))
            .collect::<Result<Vec<_>, FamilyError>>()?;
        Ok(Self { k, n, d, rows })
    }
}
