//! Embedded reference values with per-cell legibility.

use anyhow::{bail, Context, Result};
use serde::Deserialize;

const DATA: &str = include_str!("../data/published.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    /// Exact text.
    Eq,
    /// `|computed - value| <= tolerance`.
    Abs,
    /// `computed < value`, for published upper bounds.
    Lt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Legibility {
    Yes,
    No,
    Flagged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Published {
    pub table: String,
    pub cell: String,
    pub value: String,
    pub tolerance: f64,
    pub cmp: Cmp,
    pub legible: Legibility,
    pub note: String,
}

#[derive(Deserialize)]
struct Raw {
    table: String,
    cell: String,
    value: String,
    tolerance: f64,
    cmp: String,
    legible: String,
    note: String,
}

pub fn load() -> Result<Vec<Published>> {
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(DATA.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in rd.deserialize::<Raw>().enumerate() {
        let r = rec.with_context(|| format!("published value record {}", i + 1))?;
        let cmp = match r.cmp.as_str() {
            "eq" => Cmp::Eq,
            "abs" => Cmp::Abs,
            "lt" => Cmp::Lt,
            other => bail!("record {}: unknown comparison '{other}'", i + 1),
        };
        let legible = match r.legible.as_str() {
            "yes" => Legibility::Yes,
            "no" => Legibility::No,
            "flagged" => Legibility::Flagged,
            other => bail!("record {}: unknown legibility '{other}'", i + 1),
        };
        if cmp != Cmp::Eq {
            r.value.parse::<f64>().with_context(|| format!("record {}: value '{}'", i + 1, r.value))?;
        }
        out.push(Published {
            table: r.table,
            cell: r.cell,
            value: r.value,
            tolerance: r.tolerance,
            cmp,
            legible,
            note: r.note,
        });
    }
    Ok(out)
}
