//! Plain-text output tables.
//!
//! A table is a block of `#` comment lines followed by whitespace-separated
//! rows. The comment block is the effective run configuration as TOML plus a
//! `[meta]` table, so stripping the `# ` prefixes yields a loadable config.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;
use crate::sweep::Axis;
use crate::{Error, Result};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Int(i) => i as f64,
            Cell::Real(x) => x,
        }
    }
}

/// Twelve significant digits in scientific notation.
pub fn format_real(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub name: String,
    /// Comment lines without the leading `# `.
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct Meta<'a> {
    tool: &'a str,
    table: &'a str,
    columns: &'a [String],
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series_value: Option<f64>,
}

#[derive(Serialize)]
struct MetaDoc<'a> {
    meta: Meta<'a>,
}

impl OutputTable {
    pub fn new(name: String, run: RunConfig, series: Option<(Axis, f64)>, columns: Vec<String>) -> Self {
        let meta = MetaDoc {
            meta: Meta {
                tool: TOOL_VERSION,
                table: &name,
                columns: &columns,
                seed: run.simulation.seed(),
                series: series.map(|(a, _)| a.name()),
                series_value: series.map(|(_, v)| v),
            },
        };
        let mut text = run.to_toml();
        text.push('\n');
        text.push_str(&toml::to_string(&meta).expect("table metadata serializes"));
        let header = text.lines().map(str::to_string).collect();
        Self {
            name,
            header,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.header {
            if line.is_empty() {
                out.push_str("#\n");
            } else {
                let _ = writeln!(out, "# {line}");
            }
        }
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match *c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Real(x) => format_real(x),
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Values of column `index`, in row order.
    pub fn column(&self, index: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[index].as_f64()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitStatus {
    Written,
    /// The table had no rows; only the header was written.
    Empty,
}

pub fn emit_table(table: &OutputTable, path: &Path) -> Result<EmitStatus> {
    std::fs::write(path, table.render()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(if table.rows.is_empty() {
        EmitStatus::Empty
    } else {
        EmitStatus::Written
    })
}

/// Writes every table as `<dir>/<name>.dat`, creating `dir` if needed.
pub fn emit_all(tables: &[OutputTable], dir: &Path) -> Result<Vec<(PathBuf, EmitStatus)>> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    tables
        .iter()
        .map(|t| {
            let path = dir.join(format!("{}.dat", t.name));
            emit_table(t, &path).map(|s| (path, s))
        })
        .collect()
}

/// The leading comment block of a table file with the `#` markers removed.
pub fn header_text(table_text: &str) -> String {
    let mut out = String::new();
    for line in table_text.lines() {
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        out.push_str(rest.strip_prefix(' ').unwrap_or(rest));
        out.push('\n');
    }
    out
}
