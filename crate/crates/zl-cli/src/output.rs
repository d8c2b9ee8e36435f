//! Output rendering shared by every subcommand.
//!
//! Three formats: aligned plain-text tables for people, CSV with stable
//! documented columns for spreadsheets, and JSON for programs. Exact values
//! are never rounded away: every record carries its `num/den` (and, for
//! surds, `linear` plus `radicand`) fields in all formats, and decimal
//! strings are display-only annotations controlled by `--precision`.

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use zl_core::{Rat, Surd};

/// JSON documents all start with this top-level `schema` value.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

/// Format selection plus the decimal annotation width.
#[derive(Debug, Clone, Copy)]
pub struct RenderOpts {
    pub format: OutputFormat,
    pub precision: u32,
}

/// Left-aligned plain-text table with a header underline.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render = |cells: Vec<String>, out: &mut String| {
        let line: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    render(headers.iter().map(|h| h.to_string()).collect(), &mut out);
    render(widths.iter().map(|w| "-".repeat(*w)).collect(), &mut out);
    for row in rows {
        render(row.clone(), &mut out);
    }
    out
}

/// CSV with a header record, quoting handled by the writer.
pub fn csv_string(headers: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().context("flush csv")?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// One JSON document, pretty-printed, trailing newline.
pub fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Exact display of a surd: the integer it equals when it is one, the bare
/// rational when the radicand vanishes, `l+sqrt(s)` otherwise.
pub fn surd_exact(value: &Surd) -> String {
    if value.is_rational_form() {
        return value.linear_part().to_string();
    }
    if value.is_integer() {
        return format!("{}/1", value.floor());
    }
    value.to_string()
}

pub fn rat_decimal(value: &Rat, precision: u32) -> String {
    value.decimal_string(precision)
}

pub fn surd_decimal(value: &Surd, precision: u32) -> String {
    value.decimal_string(precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_aligns_and_trims() {
        let out = table(
            &["name", "value"],
            &[
                vec!["I_a".to_string(), "5/1".to_string()],
                vec!["longer".to_string(), "x".to_string()],
            ],
        );
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "name    value");
        assert_eq!(lines[1], "------  -----");
        assert_eq!(lines[2], "I_a     5/1");
        assert_eq!(lines[3], "longer  x");
    }

    #[test]
    fn csv_quotes_embedded_commas() {
        let out = csv_string(
            &["name", "note"],
            &[vec!["a".to_string(), "x, y".to_string()]],
        )
        .unwrap();
        assert_eq!(out, "name,note\na,\"x, y\"\n");
    }

    #[test]
    fn surds_render_exactly() {
        let six = Surd::new(Rat::new(7, 4), Rat::new(289, 16)).unwrap();
        assert_eq!(surd_exact(&six), "6/1");
        let rational = Surd::rational(Rat::new(116, 11));
        assert_eq!(surd_exact(&rational), "116/11");
        let irrational = Surd::new(Rat::new(2, 3), Rat::new(28, 9)).unwrap();
        assert_eq!(surd_exact(&irrational), "2/3+sqrt(28/9)");
        assert_eq!(surd_decimal(&irrational, 3), "2.430");
    }
}
