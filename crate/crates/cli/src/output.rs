//! Output rendering: the shared result envelope and its three formats.
//!
//! Rationals serialize as `{"num": "...", "den": "..."}` string pairs so no
//! precision is lost. All JSON maps are ordered, so identical invocations
//! produce byte-identical output.

use hmdist_core::rational::Rat;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
        }
    }
}

/// What a subcommand produces: a status, a structured payload, the table
/// rows used for `table`/`csv` rendering, and the provenance identifiers of
/// the formulas and data files exercised.
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub human: String,
    pub csv: String,
    pub provenance: Vec<&'static str>,
}

impl CommandResult {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let envelope = json!({
                    "status": self.status.as_str(),
                    "provenance": self.provenance,
                    "result": self.payload,
                });
                let mut s = serde_json::to_string_pretty(&envelope).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => self.human.clone(),
            Format::Csv => self.csv.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn rat_json(r: &Rat) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

pub fn rat_text(r: &Rat) -> String {
    hmdist_core::rational::display(r)
}

/// Simple aligned two-or-more-column table for human output.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:<width$}", cell, width = widths[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let escaped: Vec<String> = row
            .iter()
            .map(|c| {
                if c.contains(',') || c.contains('"') {
                    format!("\"{}\"", c.replace('"', "\"\""))
                } else {
                    c.clone()
                }
            })
            .collect();
        out.push_str(&escaped.join(","));
        out.push('\n');
    }
    out
}
