//! Tabular output shared by every subcommand.

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    /// File stem when written under `--out`.
    pub name: String,
    /// Source anchor, emitted as a header comment.
    pub anchor: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            anchor: anchor.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                let body = String::from_utf8(w.into_inner()?)?;
                format!("# {}\n{body}", self.anchor)
            }
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Md => {
                let mut s = format!("<!-- {} -->\n", self.anchor);
                s += &format!("| {} |\n", self.columns.join(" | "));
                s += &format!("|{}\n", "---|".repeat(self.columns.len()));
                for r in &self.rows {
                    s += &format!("| {} |\n", r.iter().map(|c| c.replace('|', "\\|")).collect::<Vec<_>>().join(" | "));
                }
                s
            }
        })
    }
}

/// Fixed-precision rendering so repeated runs are byte-identical.
pub fn num(x: f64, decimals: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn opt(x: Option<f64>, decimals: usize) -> String {
    x.map(|v| num(v, decimals)).unwrap_or_default()
}
