//! Rendering of command results as aligned text, CSV or JSON.
//!
//! Every number goes through [`format_number`] first, so the three formats
//! carry the same digits.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n as i64)
    }
}

/// Result of one command: named inputs, a table and optional summary.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Self {
            command,
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, key: &'static str, value: impl Into<Cell>) -> &mut Self {
        self.inputs.push((key, value.into()));
        self
    }

    pub fn summary(&mut self, key: &'static str, value: impl Into<Cell>) -> &mut Self {
        self.summary.push((key, value.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format, precision: usize) -> String {
        match format {
            Format::Text => self.render_text(precision),
            Format::Csv => self.render_csv(precision),
            Format::Json => self.render_json(precision),
        }
    }

    fn render_text(&self, precision: usize) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{k} = {}", cell_text(v, precision));
        }
        if !self.columns.is_empty() {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| cell_text(c, precision)).collect())
                .collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, h)| cells.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: Vec<&str>| {
                let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:>w$}")).collect();
                padded.join("  ").trim_end().to_owned()
            };
            let _ = writeln!(out, "{}", line(self.columns.clone()));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
            }
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k} = {}", cell_text(v, precision));
        }
        out
    }

    fn render_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.columns.join(","));
        for r in &self.rows {
            let fields: Vec<String> = r.iter().map(|c| csv_field(&cell_text(c, precision))).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    fn render_json(&self, precision: usize) -> String {
        let object = |pairs: &[(&'static str, Cell)]| {
            let mut m = Map::new();
            for (k, v) in pairs {
                m.insert((*k).to_owned(), cell_json(v, precision));
            }
            Json::Object(m)
        };
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (k, v) in self.columns.iter().zip(r) {
                    m.insert((*k).to_owned(), cell_json(v, precision));
                }
                Json::Object(m)
            })
            .collect();

        let mut top = Map::new();
        top.insert("command".into(), Json::String(self.command.into()));
        top.insert("inputs".into(), object(&self.inputs));
        top.insert("rows".into(), Json::Array(rows));
        if !self.summary.is_empty() {
            top.insert("summary".into(), object(&self.summary));
        }
        let mut s = serde_json::to_string_pretty(&Json::Object(top)).expect("plain JSON values");
        s.push('\n');
        s
    }
}

fn cell_text(c: &Cell, precision: usize) -> String {
    match c {
        Cell::Num(x) => format_number(*x, precision),
        Cell::Int(n) => n.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

fn cell_json(c: &Cell, precision: usize) -> Json {
    match c {
        Cell::Num(x) => {
            let rounded: f64 = format_number(*x, precision).parse().unwrap_or(f64::NAN);
            Number::from_f64(rounded).map_or(Json::Null, Json::Number)
        }
        Cell::Int(n) => Json::Number((*n).into()),
        Cell::Text(s) => Json::String(s.clone()),
        Cell::Bool(b) => Json::Bool(*b),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// `x` rounded to `digits` significant digits. Plain decimal notation for
/// moderate exponents, scientific otherwise; never locale dependent.
pub fn format_number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("exponent present in {:e} output");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}
