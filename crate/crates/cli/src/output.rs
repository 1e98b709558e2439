use std::io::{self, Write};

use superh_core::{Record, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Column names in order of first appearance; rows of mixed suites have
/// different keys.
fn columns(rows: &[Record]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !cols.iter().any(|c| c == k) {
                cols.push(k.to_string());
            }
        }
    }
    cols
}

fn cells(r: &Record, cols: &[String]) -> Vec<String> {
    cols.iter().map(|c| r.get(c).map(|v| v.to_string()).unwrap_or_default()).collect()
}

pub fn write(report: &Report, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Csv => {
            let cols = columns(&report.rows);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&cols)?;
            for r in &report.rows {
                w.write_record(cells(r, &cols))?;
            }
            w.flush()
        }
        Format::Table => table(report, out),
    }
}

fn table(report: &Report, out: &mut impl Write) -> io::Result<()> {
    let params: Vec<String> = report.parameters.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "{} {}", report.command, params.join(" "))?;
    let cols = columns(&report.rows);
    if !cols.is_empty() {
        let body: Vec<Vec<String>> = report.rows.iter().map(|r| cells(r, &cols)).collect();
        let widths: Vec<usize> = (0..cols.len())
            .map(|i| body.iter().map(|row| row[i].chars().count()).chain([cols[i].chars().count()]).max().unwrap_or(0))
            .collect();
        let line = |row: &[String]| -> String {
            let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(&cols))?;
        writeln!(out, "{}", line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()))?;
        for row in &body {
            writeln!(out, "{}", line(row))?;
        }
    }
    writeln!(out, "status: {}", report.status)?;
    if let Some(c) = &report.counterexample {
        writeln!(out, "counterexample: {c}")?;
    }
    Ok(())
}
