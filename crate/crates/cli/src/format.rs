//! Number formatting and aligned text tables.

use nalgebra::DMatrix;
use qsys_core::C64;

/// Twelve significant digits, trailing zeros trimmed.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').expect("exponent");
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{mant}e{e}")
    }
}

/// Value rounded to twelve significant digits, for JSON output.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn complex(z: C64) -> String {
    if z.im == 0.0 || num(z.im) == "0" {
        return num(z.re);
    }
    let sign = if z.im < 0.0 { "-" } else { "+" };
    format!("{}{}{}i", num(z.re), sign, num(z.im.abs()))
}

pub fn int_matrix(z: &DMatrix<i64>) -> String {
    let width = z.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for i in 0..z.nrows() {
        let row: Vec<String> = (0..z.ncols()).map(|j| format!("{:>width$}", z[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn int_rows(z: &DMatrix<i64>) -> Vec<Vec<i64>> {
    (0..z.nrows()).map(|i| (0..z.ncols()).map(|j| z[(i, j)]).collect()).collect()
}

/// Left-aligned columns separated by two spaces; widths count characters.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, cell) in r.iter().enumerate().take(cols) {
            width[k] = width[k].max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let pad = width[k] - c.chars().count();
                format!("{c}{}", " ".repeat(pad))
            })
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
