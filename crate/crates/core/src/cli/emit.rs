use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use super::report::{Report, Results};
use super::{CliError, OutputFormat, EXIT_INVALID, EXIT_IO};
use crate::family::{CertifiedRow, FamilyCertificate};

/// Column order of the csv output, one row per `(n, i)`.
pub const CSV_HEADER: &str = "k,n,i,A_i,x_i,y_i,N_i,m_i,D_i,h,norm,L1";

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{:>w$}", c, w = w))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn cert_rows(rows: &[CertifiedRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.row.i.to_string(),
                r.row.a.to_string(),
                r.row.x.to_string(),
                r.row.y.to_string(),
                r.row.radicand.to_string(),
                r.row.m.to_string(),
                r.row.disc.to_string(),
                r.unit_exponent.to_string(),
                r.h_plus.to_string(),
                r.h.to_string(),
                format!("{:+}", r.unit.norm),
                format!("{:.12}", r.l1),
            ]
        })
        .collect()
}

fn certificate_text(c: &FamilyCertificate, out: &mut String) {
    let _ = writeln!(out, "k = {}, n = {}, d = {}", c.k, c.n, c.d);
    out.push_str(&table(
        &["i", "A_i", "x_i", "y_i", "N_i", "m_i", "D_i", "m", "h+", "h", "norm", "L(1,chi)"],
        &cert_rows(&c.rows),
    ));
    let _ = writeln!(out, "min h = {}", c.min_h);
    let _ = writeln!(out, "C(n, k+1) squarefree: {}", c.binomial_squarefree);
    let _ = writeln!(
        out,
        "unit bound rho <= {} n^(2k+1): {}",
        c.unit_bound_constant, c.unit_bound_ok
    );
    for r in &c.rows {
        let _ = writeln!(out, "eps_{} = {}", r.row.i, r.unit);
    }
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    match &report.results {
        Results::Cf { radicand, expansion } => {
            let join = |v: &[i128]| v.iter().map(i128::to_string).collect::<Vec<_>>().join(", ");
            let _ = writeln!(
                out,
                "sqrt({}) = [{}; {}]  (period {})",
                radicand,
                join(&expansion.preperiod),
                join(&expansion.period),
                expansion.period_len()
            );
        }
        Results::Pell { radicand, plus, minus } => {
            let _ = writeln!(out, "x^2 - {} y^2 = +1: x = {}, y = {}", radicand, plus.x, plus.y);
            match minus {
                Some(m) => {
                    let _ = writeln!(out, "x^2 - {} y^2 = -1: x = {}, y = {}", radicand, m.x, m.y);
                }
                None => {
                    let _ = writeln!(out, "x^2 - {} y^2 = -1: no solution", radicand);
                }
            }
        }
        Results::Unit { unit, regulator } => {
            let _ = writeln!(out, "D = {}", unit.d);
            let _ = writeln!(out, "eps = {}", unit);
            let _ = writeln!(out, "norm = {:+}", unit.norm);
            let _ = writeln!(out, "regulator = {:.12}", regulator);
        }
        Results::Classnum(f) => {
            out.push_str(&table(
                &["N", "m", "D", "h+", "h", "norm", "regulator", "L(1,chi)"],
                &[vec![
                    f.radicand.to_string(),
                    f.m.to_string(),
                    f.d.to_string(),
                    f.h_plus.to_string(),
                    f.h.to_string(),
                    format!("{:+}", f.unit.norm),
                    format!("{:.12}", f.regulator()),
                    format!("{:.12}", f.l1),
                ]],
            ));
            let _ = writeln!(out, "eps = {}", f.unit);
        }
        Results::Certify(c) => certificate_text(c, &mut out),
        Results::Search(s) => {
            let _ = writeln!(
                out,
                "search k = {}, X = {}, n in [{}, {}]: examined {}, max min h = {}",
                s.k, s.x, s.n_min, s.n_max, s.examined, s.max_min_h
            );
            for sk in &s.skipped {
                let _ = writeln!(out, "skipped n = {}: {}", sk.n, sk.reason);
            }
            match &s.certificate {
                Some(c) => {
                    let _ = writeln!(out, "found n = {}", c.n);
                    certificate_text(c, &mut out);
                }
                None => out.push_str("not found\n"),
            }
        }
        Results::Kbound { n, eps, k_bound } => {
            let _ = writeln!(out, "n = {}, eps = {}: k <= {}", n, eps, k_bound);
        }
        Results::Polyscan(s) => {
            out.push_str(&table(
                &["k", "n_max", "B", "B'", "squarefree", "total", "density"],
                &[vec![
                    s.k.to_string(),
                    s.n_max.to_string(),
                    s.b.to_string(),
                    s.b_prime.to_string(),
                    s.count_squarefree.to_string(),
                    s.count_total.to_string(),
                    format!("{:.6}", s.density),
                ]],
            ));
            let _ = writeln!(out, "D_i * B' >= d + i failures: {}", s.mechanism_failures.len());
            if !s.degenerate.is_empty() {
                let list: Vec<String> = s.degenerate.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "degenerate n: {}", list.join(", "));
            }
        }
    }
    out
}

fn csv_certificate(c: &FamilyCertificate, out: &mut String) {
    for r in &c.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            c.k, c.n, r.row.i, r.row.a, r.row.x, r.row.y, r.row.radicand, r.row.m, r.row.disc, r.h, r.unit.norm, r.l1
        );
    }
}

fn csv(report: &Report) -> Result<String, CliError> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    match &report.results {
        Results::Certify(c) => csv_certificate(c, &mut out),
        Results::Search(s) => {
            if let Some(c) = &s.certificate {
                csv_certificate(c, &mut out);
            }
        }
        _ => {
            return Err(CliError::new(
                EXIT_INVALID,
                "csv output is defined for certify and search only",
            ))
        }
    }
    Ok(out)
}

/// The report rendered in `format`.
pub fn render(report: &Report, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Text => Ok(text(report)),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::new(EXIT_INVALID, e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => csv(report),
    }
}

/// Writes the rendered report to `path`, or to standard output.
pub fn emit(report: &Report, format: OutputFormat, path: Option<&Path>) -> Result<(), CliError> {
    let body = render(report, format)?;
    let io_err = |e: std::io::Error| CliError::new(EXIT_IO, format!("cannot write output: {e}"));
    match path {
        Some(p) => fs::write(p, body).map_err(|e| {
            CliError::new(EXIT_IO, format!("cannot write {}: {e}", p.display()))
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(io_err)?;
            stdout.flush().map_err(io_err)
        }
    }
}
