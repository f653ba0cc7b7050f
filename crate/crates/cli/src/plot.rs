//! Emits a standalone matplotlib script for a dataset produced by this tool.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum PlotStyle {
    /// Lines for grid data, steps for traces.
    Auto,
    Lines,
    Steps,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub columns: Vec<String>,
    pub rows: usize,
}

/// Checks the CSV shape: a header row after the `#` lines, then rows with
/// the same number of fields holding numbers, empty cells, or (in a leading
/// `series` column) labels.
pub fn parse_csv(text: &str) -> Result<ParsedCsv, CliError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| CliError::Parse("no header row found".into()))?;
    let columns: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let labelled = columns.first().is_some_and(|c| c == "series");
    let mut rows = 0;
    for (idx, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(CliError::Parse(format!(
                "line {}: expected {} fields, found {}",
                idx + 1,
                columns.len(),
                fields.len()
            )));
        }
        for (col, field) in fields.iter().enumerate() {
            if (labelled && col == 0) || field.is_empty() {
                continue;
            }
            if field.trim().parse::<f64>().is_err() {
                return Err(CliError::Parse(format!("line {}: `{field}` is not a number", idx + 1)));
            }
        }
        rows += 1;
    }
    Ok(ParsedCsv { columns, rows })
}

fn is_series_column(name: &str) -> bool {
    !(name.starts_with("stderr") || name.starts_with("failed") || name == "captured_mass")
}

pub fn plot_script(data_path: &Path, csv: &ParsedCsv, style: PlotStyle) -> String {
    let trace = csv.columns.first().is_some_and(|c| c == "series");
    let steps = match style {
        PlotStyle::Auto => trace,
        PlotStyle::Lines => false,
        PlotStyle::Steps => true,
    };
    let path = data_path.display().to_string().replace('\\', "\\\\").replace('\'', "\\'");
    let mut s = String::new();
    s.push_str("#!/usr/bin/env python3\n");
    s.push_str("import csv\nimport matplotlib.pyplot as plt\n\n");
    let _ = writeln!(s, "DATA = '{path}'");
    s.push_str(
        "with open(DATA) as fh:\n    rows = list(csv.reader(line for line in fh if not line.startswith('#')))\n",
    );
    s.push_str("header, body = rows[0], rows[1:]\n\n");
    s.push_str("def num(x):\n    return float(x) if x else float('nan')\n\n");
    s.push_str("fig, ax = plt.subplots()\n");
    let draw = if steps { "ax.step(x, y, where='post', label=label)" } else { "ax.plot(x, y, label=label)" };
    if trace {
        s.push_str("series = {}\nfor r in body:\n    series.setdefault(r[0], []).append(r)\n");
        s.push_str("for label, rs in series.items():\n");
        s.push_str("    x = [num(r[1]) for r in rs]\n    y = [num(r[2]) for r in rs]\n");
        let _ = writeln!(s, "    {draw}");
        s.push_str("    ax.axhline(num(rs[0][3]), color='red', lw=0.8)\n");
        s.push_str("ax.set_xscale('log')\nax.set_xlabel('t / tau')\n");
    } else {
        let cols: Vec<usize> =
            (1..csv.columns.len()).filter(|&i| is_series_column(&csv.columns[i])).collect();
        let _ = writeln!(s, "x = [num(r[0]) for r in body]");
        let _ = writeln!(s, "for i in {cols:?}:");
        s.push_str("    label = header[i]\n    y = [num(r[i]) for r in body]\n");
        let _ = writeln!(s, "    {draw}");
        let _ = writeln!(s, "ax.set_xlabel('{}')", csv.columns[0]);
    }
    s.push_str("ax.set_ylabel('rate')\nax.legend()\nplt.show()\n");
    s
}
