//! Certificates for single instances, the discriminant bound check, and the
//! search for instances whose class numbers all exceed a threshold.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::units::{find_exponent, relation_for_row, rho_half_coords};
use super::{
    d_of, family_unit, pell_identity, shifted_decomposition, FamilyError, FamilyInstance,
    FamilyRow, UNIT_BOUND_CONSTANT,
};
use crate::arith::{binomial, is_perfect_square, is_squarefree, squarefree_part};
use crate::cfrac::{fundamental_unit, FundUnit};
use crate::classgroup::{
    analytic_class_number, l1_smoothed, l1_value, narrow_class_number, wide_class_number,
    ClassGroupError, FieldInvariants, Summation, MAX_FORM_DISCRIMINANT,
};
use crate::decimal;

/// One row of a certificate: the family data, the fundamental unit with the
/// exponent linking it to `ρ_i`, and the class numbers with `L(1, χ_{D_i})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRow {
    #[serde(flatten)]
    pub row: FamilyRow,
    pub unit: FundUnit,
    pub unit_exponent: u32,
    pub h_plus: u64,
    pub h: u64,
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L1_error")]
    pub l1_error: f64,
}

impl CertifiedRow {
    pub fn field(&self) -> FieldInvariants {
        FieldInvariants {
            radicand: self.row.radicand,
            m: self.row.m,
            d: self.row.disc,
            unit: self.unit.clone(),
            h_plus: self.h_plus,
            h: self.h,
            l1: self.l1,
            l1_error: self.l1_error,
        }
    }
}

/// Everything needed to re-check one `(k, n)` instance of the construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub k: u32,
    pub n: u64,
    #[serde(with = "decimal")]
    pub d: u128,
    pub rows: Vec<CertifiedRow>,
    pub min_h: u64,
    pub binomial_squarefree: bool,
    /// `ρ_i ≤ C n^{2k+1}` for every row, with `C = unit_bound_constant`.
    pub unit_bound_ok: bool,
    pub unit_bound_constant: u32,
}

fn binomial_is_squarefree(k: u32, n: u64) -> Result<bool, FamilyError> {
    let c = binomial(n, u64::from(k) + 1);
    match c.to_u128() {
        Some(v) => Ok(is_squarefree(v)?),
        None => Err(FamilyError::Overflow { k, n }),
    }
}

fn certify_row(k: u32, n: u64, row: FamilyRow, mode: Summation) -> Result<CertifiedRow, FamilyError> {
    if row.disc > MAX_FORM_DISCRIMINANT {
        return Err(ClassGroupError::TooLarge(row.disc).into());
    }
    let rel = relation_for_row(k, n, &row)?;
    let h_plus = narrow_class_number(row.disc)?;
    let h = wide_class_number(h_plus, rel.unit.norm);
    let l1 = l1_value(row.disc, mode)?;
    let (h_analytic, raw) = analytic_class_number(row.disc, l1.value, &rel.unit)?;
    if h_analytic != h {
        return Err(ClassGroupError::Precision { value: raw }.into());
    }
    Ok(CertifiedRow {
        row,
        unit: rel.unit,
        unit_exponent: rel.exponent,
        h_plus,
        h,
        l1: l1.value,
        l1_error: l1.error_bound,
    })
}

pub fn certify(k: u32, n: u64) -> Result<FamilyCertificate, FamilyError> {
    certify_with(k, n, Summation::Compensated)
}

/// Certificate for `(k, n)` with exact class numbers for every `d + i`.
/// Rows are computed in parallel on the current rayon pool.
pub fn certify_with(k: u32, n: u64, mode: Summation) -> Result<FamilyCertificate, FamilyError> {
    let instance = FamilyInstance::new(k, n)?;
    if let Some(big) = instance.rows.iter().find(|r| r.disc > MAX_FORM_DISCRIMINANT) {
        return Err(ClassGroupError::TooLarge(big.disc).into());
    }
    let rows: Vec<CertifiedRow> = instance
        .rows
        .into_par_iter()
        .map(|row| certify_row(k, n, row, mode))
        .collect::<Result<_, _>>()?;
    let min_h = rows.iter().map(|r| r.h).min().expect("k + 1 rows");
    let unit_bound_ok = rows.iter().all(|r| {
        super::unit_bound_holds(r.row.x, r.row.y, r.row.radicand, n, k, UNIT_BOUND_CONSTANT)
    });
    Ok(FamilyCertificate {
        k,
        n,
        d: instance.d,
        rows,
        min_h,
        binomial_squarefree: binomial_is_squarefree(k, n)?,
        unit_bound_ok,
        unit_bound_constant: UNIT_BOUND_CONSTANT,
    })
}

fn mismatch(check: &'static str, row: Option<u32>) -> FamilyError {
    FamilyError::CertificateMismatch { check, row }
}

fn ensure(cond: bool, check: &'static str, row: Option<u32>) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(mismatch(check, row))
    }
}

impl FamilyCertificate {
    pub fn instance(&self) -> FamilyInstance {
        FamilyInstance {
            k: self.k,
            n: self.n,
            d: self.d,
            rows: self.rows.iter().map(|r| r.row.clone()).collect(),
        }
    }

    /// Re-checks the certificate from its own contents. Class numbers are
    /// confirmed through the analytic formula with a freshly computed
    /// `L(1, χ)` and the stored unit, so no forms are enumerated.
    pub fn verify(&self) -> Result<(), FamilyError> {
        let (k, n) = (self.k, self.n);
        ensure(self.d == d_of(k, n)?, "d", None)?;
        ensure(self.rows.len() == k as usize + 1, "row count", None)?;
        for (idx, cr) in self.rows.iter().enumerate() {
            let r = &cr.row;
            let i = r.i;
            let at = Some(i);
            ensure(i as usize == idx, "row index", at)?;
            ensure(shifted_decomposition(k, n, i)? == (r.a, r.radicand), "A_i and N_i", at)?;
            ensure(r.radicand == self.d + u128::from(i), "N_i = d + i", at)?;
            ensure(family_unit(k, n, i)? == (r.x, r.y), "x_i and y_i", at)?;
            ensure(pell_identity(r.x, r.y, r.radicand), "x^2 - N y^2 = 1", at)?;
            let t = u128::from(n - u64::from(i));
            ensure(t.gcd(&(r.a * r.a * t - 1)) == 1, "coprime split", at)?;

            ensure(r.m > 1 && r.radicand % r.m == 0, "m_i divides N_i", at)?;
            ensure(is_perfect_square(r.radicand / r.m), "N_i / m_i square", at)?;
            ensure(is_squarefree(r.m)?, "m_i squarefree", at)?;
            let disc = if r.m % 4 == 1 { r.m } else { 4 * r.m };
            ensure(r.disc == disc, "D_i", at)?;

            ensure(cr.unit.d == r.disc && cr.unit.is_unit(), "unit equation", at)?;
            ensure(fundamental_unit(r.disc)? == cr.unit, "unit is fundamental", at)?;
            let rho = rho_half_coords(r.x, r.y, r.radicand, r.m, r.disc);
            ensure(find_exponent(&cr.unit, &rho) == Some(cr.unit_exponent), "rho = eps^m", at)?;

            ensure(wide_class_number(cr.h_plus, cr.unit.norm) == cr.h, "h from h_plus", at)?;
            let l1 = l1_smoothed(r.disc, 1e-12)?;
            ensure((l1.value - cr.l1).abs() <= 1e-9, "L1 value", at)?;
            let (h, _) = analytic_class_number(r.disc, l1.value, &cr.unit)?;
            ensure(h == cr.h, "analytic class number", at)?;
        }
        let min_h = self.rows.iter().map(|r| r.h).min();
        ensure(min_h == Some(self.min_h), "min_h", None)?;
        ensure(self.binomial_squarefree == binomial_is_squarefree(k, n)?, "binomial", None)?;
        let bound_ok = self.rows.iter().all(|r| {
            super::unit_bound_holds(r.row.x, r.row.y, r.row.radicand, n, k, self.unit_bound_constant)
        });
        ensure(bound_ok == self.unit_bound_ok, "unit bound", None)?;
        Ok(())
    }
}

/// `(C(n, k+1) squarefree, sqf(n-i) ≥ (n-i)/(k+1)! for all i)`.
pub fn discriminant_bound_check(k: u32, n: u64) -> Result<(bool, bool), FamilyError> {
    if n <= u64::from(k) {
        return Err(FamilyError::NNotAboveK { k, n });
    }
    let fact: u128 = (1..=u128::from(k) + 1).product();
    let binom_ok = binomial_is_squarefree(k, n)?;
    let mut bound_ok = true;
    for i in 0..=k {
        let t = u128::from(n - u64::from(i));
        if squarefree_part(t)? * fact < t {
            bound_ok = false;
        }
    }
    Ok((binom_ok, bound_ok))
}

/// An `n` the search passed over, and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedInstance {
    pub n: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub k: u32,
    #[serde(rename = "X")]
    pub x: f64,
    pub n_min: u64,
    pub n_max: u64,
    pub found: bool,
    pub n: Option<u64>,
    pub certificate: Option<FamilyCertificate>,
    /// Largest `min_h` over the instances examined.
    pub max_min_h: u64,
    pub examined: u64,
    pub skipped: Vec<SkippedInstance>,
}

const SEARCH_CHUNK: u64 = 16;

/// Smallest `n` in `n_min..=n_max` whose certificate has `min_h > x`.
///
/// Instances are certified in fixed-size chunks in parallel and scanned in
/// increasing `n`, so the outcome does not depend on the number of workers.
/// Instances with a square radicand are skipped and listed.
pub fn theorem1_search(
    k: u32,
    x: f64,
    n_min: u64,
    n_max: u64,
    mode: Summation,
) -> Result<SearchOutcome, FamilyError> {
    let lo = n_min.max(u64::from(k) + 1);
    if lo > n_max {
        return Err(FamilyError::EmptyRange { lo: n_min, hi: n_max });
    }
    let mut out = SearchOutcome {
        k,
        x,
        n_min,
        n_max,
        found: false,
        n: None,
        certificate: None,
        max_min_h: 0,
        examined: 0,
        skipped: Vec::new(),
    };
    let mut start = lo;
    while start <= n_max {
        let end = n_max.min(start + SEARCH_CHUNK - 1);
        let results: Vec<(u64, Result<FamilyCertificate, FamilyError>)> = (start..=end)
            .into_par_iter()
            .map(|n| (n, certify_with(k, n, mode)))
            .collect();
        for (n, res) in results {
            out.examined += 1;
            match res {
                Ok(cert) => {
                    out.max_min_h = out.max_min_h.max(cert.min_h);
                    if cert.min_h as f64 > x {
                        out.found = true;
                        out.n = Some(n);
                        out.certificate = Some(cert);
                        return Ok(out);
                    }
                }
                Err(e @ (FamilyError::SquareRadicand { .. } | FamilyError::DegenerateD { .. })) => {
                    out.skipped.push(SkippedInstance {
                        n,
                        reason: e.to_string(),
                    })
                }
                Err(e) => return Err(e),
            }
        }
        start = end + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::class_number;

    #[test]
    fn certify_examples() {
        let c = certify(1, 3).unwrap();
        let radicands: Vec<u128> = c.rows.iter().map(|r| r.row.radicand).collect();
        assert_eq!(radicands, vec![33, 34]);
        let hs: Vec<u64> = c.rows.iter().map(|r| r.h).collect();
        assert_eq!(hs, vec![1, 2]);
        assert_eq!(c.min_h, 1);
        c.verify().unwrap();

        let c = certify(1, 2).unwrap();
        let radicands: Vec<u128> = c.rows.iter().map(|r| r.row.radicand).collect();
        assert_eq!(radicands, vec![2, 3]);
        assert_eq!(c.min_h, 1);

        let c = certify(0, 9).unwrap();
        assert_eq!(c.rows.len(), 1);
        assert_eq!(c.rows[0].row.radicand, 72);
        c.verify().unwrap();
    }

    #[test]
    fn certificate_rows_match_class_number_oracle() {
        for (k, n) in [(1u32, 5u64), (1, 12), (2, 5), (2, 7), (0, 40)] {
            let c = certify(k, n).unwrap();
            for r in &c.rows {
                let f = class_number(r.row.radicand).unwrap();
                assert_eq!((f.d, f.h, f.h_plus), (r.row.disc, r.h, r.h_plus));
                assert_eq!(f.unit, r.unit);
            }
            c.verify().unwrap();
        }
    }

    #[test]
    fn verify_catches_tampering() {
        let good = certify(1, 7).unwrap();
        let mut bad = good.clone();
        bad.rows[1].h += 1;
        assert!(bad.verify().is_err());
        let mut bad = good.clone();
        bad.rows[0].row.x += 2;
        assert!(bad.verify().is_err());
        let mut bad = good.clone();
        bad.min_h = 7;
        assert!(bad.verify().is_err());
        let mut bad = good;
        bad.rows[0].l1 *= 1.01;
        assert!(bad.verify().is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = certify(2, 6).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: FamilyCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        back.verify().unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for key in ["k", "n", "d", "rows", "min_h"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        for key in ["A_i", "x_i", "y_i", "N_i", "m_i", "D_i", "h", "L1"] {
            assert!(v["rows"][0].get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn discriminant_bound_examples() {
        assert_eq!(discriminant_bound_check(1, 7).unwrap(), (true, true));
        assert!(!discriminant_bound_check(1, 8).unwrap().0);
        assert_eq!(discriminant_bound_check(2, 5).unwrap(), (true, true));
        assert!(discriminant_bound_check(3, 3).is_err());
    }

    #[test]
    fn search_examples() {
        let s = theorem1_search(1, 0.0, 2, 10, Summation::Compensated).unwrap();
        assert_eq!(s.n, Some(2));
        let s = theorem1_search(1, 1.0, 2, 200, Summation::Compensated).unwrap();
        let n = s.n.expect("found");
        let cert = s.certificate.unwrap();
        assert!(cert.min_h >= 2);
        for m in 2..n {
            assert!(certify(1, m).unwrap().min_h <= 1, "n = {m}");
        }
    }

    #[test]
    fn search_reports_not_found() {
        let s = theorem1_search(1, 1000.0, 2, 6, Summation::Compensated).unwrap();
        assert!(!s.found);
        assert_eq!(s.examined, 5);
        assert!(s.max_min_h >= 1);
        assert!(theorem1_search(3, 1.0, 2, 3, Summation::Compensated).is_err());
    }
}
