//! Deterministic CSV / JSON / text rendering of command results.

use std::fmt::Write as _;

use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// C-style `%.12e`.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let e: i32 = exp.parse().expect("integer exponent");
    format!("{mant}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => sci(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
    fn json(&self) -> String {
        match self {
            Cell::Float(v) if v.is_finite() => sci(*v),
            Cell::Float(v) => serde_json::to_string(&sci(*v)).expect("string"),
            Cell::Text(s) => serde_json::to_string(s).expect("string"),
            other => other.plain(),
        }
    }
    fn csv(&self) -> String {
        let p = self.plain();
        if p.contains([',', '"', '\n']) {
            format!("\"{}\"", p.replace('"', "\"\""))
        } else {
            p
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub title: String,
    pub meta: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Report { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }
    pub fn meta(&mut self, k: &str, v: impl Into<Cell>) {
        self.meta.push((k.into(), v.into()));
    }
    pub fn row(&mut self, r: Vec<Cell>) {
        debug_assert_eq!(r.len(), self.columns.len());
        self.rows.push(r);
    }
}

pub fn emit(r: &Report, f: Format) -> String {
    match f {
        Format::Csv => csv(r),
        Format::Json => json(r),
        Format::Text => text(r),
    }
}

/// Header row plus data rows; metadata goes to `# key = value` lines
/// before the header.
fn csv(r: &Report) -> String {
    let mut out = String::new();
    for (k, v) in &r.meta {
        let _ = writeln!(out, "# {k} = {}", v.plain());
    }
    let _ = writeln!(out, "{}", r.columns.join(","));
    for row in &r.rows {
        let _ = writeln!(out, "{}", row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
    }
    out
}

fn json(r: &Report) -> String {
    let q = |s: &str| serde_json::to_string(s).expect("string");
    let mut meta: Vec<&(String, Cell)> = r.meta.iter().collect();
    meta.sort_by(|a, b| a.0.cmp(&b.0));
    let meta = meta.iter().map(|(k, v)| format!("{}:{}", q(k), v.json())).collect::<Vec<_>>().join(",");
    let cols = r.columns.iter().map(|c| q(c)).collect::<Vec<_>>().join(",");
    let rows = r
        .rows
        .iter()
        .map(|row| format!("[{}]", row.iter().map(Cell::json).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(",\n    ");
    format!(
        "{{\n  \"columns\": [{cols}],\n  \"meta\": {{{meta}}},\n  \"rows\": [\n    {rows}\n  ],\n  \"title\": {}\n}}\n",
        q(&r.title)
    )
}

fn text(r: &Report) -> String {
    let mut out = format!("{}\n", r.title);
    for (k, v) in &r.meta {
        let _ = writeln!(out, "  {k}: {}", v.plain());
    }
    let cells: Vec<Vec<String>> = r.rows.iter().map(|row| row.iter().map(Cell::plain).collect()).collect();
    let widths: Vec<usize> = (0..r.columns.len())
        .map(|j| cells.iter().map(|c| c[j].chars().count()).chain([r.columns[j].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |vals: &[String]| -> String {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v}{}", " ".repeat(w - v.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{}", line(&r.columns));
    for c in &cells {
        let _ = writeln!(out, "{}", line(c));
    }
    out
}
