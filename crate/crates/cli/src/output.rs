//! CSV tables with `#`-prefixed run manifests.

use std::fmt::Write as _;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Num)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Manifest {
    pub command: String,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub timestamp: String,
    pub output: String,
    pub warnings: Vec<String>,
}

pub fn render(manifest: &Manifest, table: &Table) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# chainrate {VERSION}");
    let _ = writeln!(out, "# command: {}", manifest.command);
    let _ = writeln!(out, "# params: {}", manifest.params);
    match manifest.seed {
        Some(seed) => {
            let _ = writeln!(out, "# seed: {seed}");
        }
        None => out.push_str("# seed: none\n"),
    }
    let _ = writeln!(out, "# timestamp: {}", manifest.timestamp);
    let _ = writeln!(out, "# output: {}", manifest.output);
    for w in &manifest.warnings {
        let _ = writeln!(out, "# warning: {w}");
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Num(x) => format_number(*x),
                Cell::Text(s) => s.clone(),
                Cell::Missing => String::new(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Fields recovered from a data file's header.
#[derive(Debug, Clone)]
pub struct RecordedRun {
    pub command: String,
    pub params: serde_json::Value,
    pub timestamp: String,
    pub output: String,
}

pub fn read_manifest(text: &str) -> Result<RecordedRun, String> {
    let mut command = None;
    let mut params = None;
    let mut timestamp = None;
    let mut output = None;
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        let body = line.trim_start_matches('#').trim_start();
        if let Some(v) = body.strip_prefix("command: ") {
            command = Some(v.to_string());
        } else if let Some(v) = body.strip_prefix("params: ") {
            params = Some(serde_json::from_str(v).map_err(|e| format!("bad params line: {e}"))?);
        } else if let Some(v) = body.strip_prefix("timestamp: ") {
            timestamp = Some(v.to_string());
        } else if let Some(v) = body.strip_prefix("output: ") {
            output = Some(v.to_string());
        }
    }
    Ok(RecordedRun {
        command: command.ok_or("manifest has no command line")?,
        params: params.ok_or("manifest has no params line")?,
        timestamp: timestamp.ok_or("manifest has no timestamp line")?,
        output: output.unwrap_or_else(|| "-".into()),
    })
}
