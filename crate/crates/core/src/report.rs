//! CSV and aligned-text output, and reading convergence reports back.

use std::io::{Read, Write};

use crate::convergence::{ConvergenceReport, ConvergenceRow, ReportMeta};
use crate::error::{Error, Result};

/// 17 significant digits in scientific notation; parses back bit-exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// A header plus string rows, written either as CSV or as a text table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Report(e.to_string());
        wr.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            wr.write_record(r).map_err(io)?;
        }
        wr.flush().map_err(|e| Error::Report(e.to_string()))
    }

    /// Right-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate() {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        let total = width.iter().sum::<usize>() + 2 * width.len().saturating_sub(1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

pub const CONVERGENCE_HEADER: [&str; 9] = [
    "scheme",
    "problem",
    "alpha",
    "norm",
    "h",
    "tau",
    "error",
    "temporal_order",
    "spatial_order",
];

/// Appends one report to a convergence table (CSV form, full precision).
pub fn convergence_rows(table: &mut Table, report: &ConvergenceReport) {
    for r in &report.rows {
        table.push(vec![
            report.meta.scheme.clone(),
            report.meta.problem.clone(),
            fmt_f64(report.meta.alpha),
            report.meta.norm.clone(),
            fmt_f64(r.h),
            fmt_opt(r.tau),
            fmt_f64(r.error),
            fmt_opt(r.temporal_order),
            fmt_opt(r.spatial_order),
        ]);
    }
}

pub fn convergence_table(reports: &[ConvergenceReport]) -> Table {
    let mut t = Table::new(&CONVERGENCE_HEADER);
    for r in reports {
        convergence_rows(&mut t, r);
    }
    t
}

/// Paper-style text layout: error with 6 digits, orders with 4 decimals.
pub fn convergence_text(reports: &[ConvergenceReport]) -> String {
    let mut t = Table::new(&["scheme", "alpha", "h", "tau", "error", "order(t)", "order(h)"]);
    for rep in reports {
        for r in &rep.rows {
            let ord = |o: Option<f64>| o.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
            t.push(vec![
                rep.meta.scheme.clone(),
                format!("{}", rep.meta.alpha),
                format!("1/{}", (1.0 / r.h).round()),
                r.tau
                    .map(|v| format!("1/{}", (1.0 / v).round()))
                    .unwrap_or_else(|| "-".into()),
                format!("{:.6e}", r.error),
                ord(r.temporal_order),
                ord(r.spatial_order),
            ]);
        }
    }
    t.to_text()
}

fn parse_f64(s: &str, line: usize, col: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::Report(format!("row {line}: bad {col} value {s:?}")))
}

fn parse_opt(s: &str, line: usize, col: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_f64(s, line, col).map(Some)
    }
}

/// Reads a convergence CSV; consecutive rows with equal metadata form one
/// report.
pub fn read_convergence_csv<R: Read>(r: R) -> Result<Vec<ConvergenceReport>> {
    let mut rd = csv::Reader::from_reader(r);
    let header = rd.headers().map_err(|e| Error::Report(e.to_string()))?.clone();
    if header.iter().ne(CONVERGENCE_HEADER.iter().copied()) {
        return Err(Error::Report(format!("unexpected header {header:?}")));
    }
    let mut out: Vec<ConvergenceReport> = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| Error::Report(e.to_string()))?;
        let line = i + 2;
        let meta = ReportMeta {
            scheme: rec[0].to_string(),
            problem: rec[1].to_string(),
            alpha: parse_f64(&rec[2], line, "alpha")?,
            norm: rec[3].to_string(),
        };
        let row = ConvergenceRow {
            h: parse_f64(&rec[4], line, "h")?,
            tau: parse_opt(&rec[5], line, "tau")?,
            error: parse_f64(&rec[6], line, "error")?,
            temporal_order: parse_opt(&rec[7], line, "temporal_order")?,
            spatial_order: parse_opt(&rec[8], line, "spatial_order")?,
        };
        match out.last_mut() {
            Some(last) if last.meta == meta => last.rows.push(row),
            _ => out.push(ConvergenceReport {
                meta,
                rows: vec![row],
            }),
        }
    }
    Ok(out)
}
