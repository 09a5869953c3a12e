use std::io::Write;

use anyhow::Result;
use equisplit::closed_form::{conjecture_table, BoundsReport};
use equisplit::constructions::shipped;

/// Fixed-point rendering with 10 significant digits.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (9 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn opt(x: Option<f64>) -> String {
    x.map(sig10).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub m: usize,
    pub n: usize,
    pub lower_bound: f64,
    pub exact: Option<f64>,
    pub conjectured: Option<f64>,
    pub construction_length: Option<f64>,
    pub optimizer_length: Option<f64>,
    pub flags: Vec<&'static str>,
}

impl ReportRow {
    pub fn new(m: usize, n: usize, optimizer_length: Option<f64>) -> Result<Self> {
        let mut report = BoundsReport::new(m, n)?;
        let built: Vec<f64> = shipped()
            .iter()
            .filter(|s| s.m == m && s.polygon.n() == n)
            .map(|s| s.total_length)
            .collect();
        for &len in &built {
            report = report.with_construction(len);
        }
        let mut flags = Vec::new();
        if report.exact_value.is_some() {
            flags.push("proven");
        }
        if report.conjectured_value.is_some() {
            flags.push("conjectured");
        }
        let entry = conjecture_table(n..=n)
            .into_iter()
            .find(|c| c.m == m && c.n == n);
        if entry.is_some_and(|c| c.disagreeing_value.is_some()) {
            flags.push("disputed");
        }
        if let (Some(b), Some(c)) = (report.best_construction_length, report.conjectured_value) {
            if b < c - 1e-9 {
                flags.push("construction-below-conjecture");
            }
        }
        if !report.is_consistent() {
            flags.push("inconsistent");
        }
        Ok(ReportRow {
            m,
            n,
            lower_bound: report.lower_bound,
            exact: report.exact_value,
            conjectured: report.conjectured_value,
            construction_length: report.best_construction_length,
            optimizer_length,
            flags,
        })
    }

    fn fields(&self) -> [String; 8] {
        [
            self.m.to_string(),
            self.n.to_string(),
            sig10(self.lower_bound),
            opt(self.exact),
            opt(self.conjectured),
            opt(self.construction_length),
            opt(self.optimizer_length),
            self.flags.join(";"),
        ]
    }
}

const HEADER: [&str; 8] = [
    "m",
    "n",
    "lower_bound",
    "exact",
    "conjectured",
    "construction_length",
    "optimizer_length",
    "flags",
];

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_text<W: Write>(rows: &[ReportRow], mut out: W) -> Result<()> {
    let cells: Vec<[String; 8]> = rows.iter().map(ReportRow::fields).collect();
    let mut width = HEADER.map(str::len);
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: &[String]| {
        row.iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(&HEADER.map(String::from)))?;
    for row in &cells {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(0.6733868435442992), "0.6733868435");
        assert_eq!(sig10(1.8612097182), "1.861209718");
        assert_eq!(sig10(123.456), "123.4560000");
        assert_eq!(sig10(0.000123456789012), "0.0001234567890");
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(-2.5), "-2.500000000");
    }

    #[test]
    fn rows_carry_flags() {
        let r = ReportRow::new(6, 3, None).unwrap();
        assert!(r.flags.contains(&"disputed"));
        assert!(r.flags.contains(&"construction-below-conjecture"));
        let r = ReportRow::new(2, 3, None).unwrap();
        assert_eq!(r.flags, vec!["proven"]);
    }
}
