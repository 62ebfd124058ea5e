use ads2::config::{OutputFormat, RunConfig, SCHEMA_VERSION};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;

/// What a subcommand produced: the structured result, a flat table for CSV
/// output, and warnings that turn the exit code into 2.
pub struct Report {
    pub result: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new<T: Serialize>(result: &T, headers: Vec<&'static str>) -> Result<Report, String> {
        Ok(Report {
            result: serde_json::to_value(result).map_err(|e| e.to_string())?,
            headers,
            rows: Vec::new(),
            warnings: Vec::new(),
        })
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }
}

pub fn num(x: f64) -> String {
    // shortest round-trip representation
    format!("{x:?}")
}

fn render(command: &str, config: &RunConfig, report: &Report) -> Result<Vec<u8>, String> {
    match config.format {
        OutputFormat::Json => {
            let doc = json!({
                "schema": SCHEMA_VERSION,
                "command": command,
                "config": config,
                "warnings": report.warnings,
                "result": report.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["schema"];
            header.extend(&report.headers);
            w.write_record(&header).map_err(|e| e.to_string())?;
            for r in &report.rows {
                let mut rec = vec![SCHEMA_VERSION.to_string()];
                rec.extend(r.iter().cloned());
                w.write_record(&rec).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

pub fn emit(command: &str, config: &RunConfig, report: &Report) -> Result<(), String> {
    let bytes = render(command, config, report)?;
    match &config.output {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("writing {path}: {e}")),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    }
}
