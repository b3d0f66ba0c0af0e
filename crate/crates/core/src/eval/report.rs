use std::fmt;
use std::str::FromStr;

use super::evaluate::EvalResult;
use crate::Error;

pub const REPORT_HEADER: [&str; 5] = ["language", "pipeline", "correct", "total", "accuracy"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Tsv,
    Table,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "tsv" => Ok(ReportFormat::Tsv),
            "table" => Ok(ReportFormat::Table),
            other => Err(Error::Config(format!(
                "unknown report format {other:?}, expected tsv or table"
            ))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Tsv => "tsv",
            ReportFormat::Table => "table",
        })
    }
}

fn row(r: &EvalResult) -> [String; 5] {
    [
        r.language.clone(),
        r.pipeline.to_string(),
        r.correct.to_string(),
        r.total.to_string(),
        format!("{:.1}", r.accuracy * 100.0),
    ]
}

/// Renders results in input order, accuracy as a percentage with one
/// decimal. `Table` pads columns to equal width, numbers right-aligned.
pub fn render_report(results: &[EvalResult], format: ReportFormat) -> String {
    let header = REPORT_HEADER.map(String::from);
    let rows: Vec<[String; 5]> = std::iter::once(header)
        .chain(results.iter().map(row))
        .collect();
    let mut out = String::new();
    match format {
        ReportFormat::Tsv => {
            for r in &rows {
                out.push_str(&r.join("\t"));
                out.push('\n');
            }
        }
        ReportFormat::Table => {
            let mut widths = [0usize; 5];
            for r in &rows {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            for r in &rows {
                let cells: Vec<String> = r
                    .iter()
                    .zip(widths)
                    .enumerate()
                    .map(|(i, (cell, w))| {
                        if i < 2 {
                            format!("{cell:<w$}")
                        } else {
                            format!("{cell:>w$}")
                        }
                    })
                    .collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
        }
    }
    out
}
