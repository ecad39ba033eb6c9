//! Deterministic table serialization: CSV and JSON with fixed float
//! formatting (17 significant digits, LF line endings).

use crate::config::{OutputFormat, RunConfig};
use crate::CliError;
use std::path::Path;

/// Fixed 17-significant-digit scientific form; the same value always
/// serializes to the same bytes.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// A table of pre-formatted cells; every cell is a valid JSON number.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, command: &str) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!(
            "  \"schema_version\": \"{}\",\n",
            crate::config::SCHEMA_VERSION
        ));
        out.push_str(&format!("  \"command\": \"{command}\",\n"));
        out.push_str("  \"columns\": [");
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{c}\""));
        }
        out.push_str("],\n  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("    [");
            out.push_str(&row.join(", "));
            out.push(']');
            out.push_str(if i + 1 < self.rows.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn render(&self, config: &RunConfig, command: &str) -> String {
        match config.format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(command),
        }
    }
}

/// Writes to the `--out` path, falling back to the config's output path and
/// then stdout.
pub fn write_output(
    config: &RunConfig,
    out_flag: Option<&Path>,
    text: &str,
) -> Result<(), CliError> {
    let path = out_flag
        .map(|p| p.to_path_buf())
        .or_else(|| config.output.as_ref().map(Into::into));
    match path {
        Some(p) => std::fs::write(&p, text)
            .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
