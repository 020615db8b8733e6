use serde::Serialize;

use crate::args::OutputFormat;
use crate::CliError;

/// A rendered command result: one flat table for markdown and csv, a typed
/// value for json. Notes are printed under the markdown table only.
pub struct Report {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub json: serde_json::Value,
}

impl Report {
    pub fn new<T: Serialize>(headers: Vec<&'static str>, data: &T) -> Result<Self, CliError> {
        Ok(Report {
            headers,
            rows: Vec::new(),
            notes: Vec::new(),
            json: serde_json::to_value(data).map_err(|e| CliError::Internal(e.to_string()))?,
        })
    }

    pub fn render(&self, format: OutputFormat, header: bool) -> Result<String, CliError> {
        match format {
            OutputFormat::Markdown => {
                let mut out = String::new();
                if header {
                    out.push_str(&format!("<!-- {} -->\n\n", version_line()));
                }
                out.push_str(&markdown(&self.headers, &self.rows));
                for n in &self.notes {
                    out.push('\n');
                    out.push_str(n);
                    out.push('\n');
                }
                Ok(out)
            }
            OutputFormat::Csv => {
                let mut out = String::new();
                if header {
                    out.push_str(&format!("# {}\n", version_line()));
                }
                out.push_str(&csv_text(&self.headers, &self.rows)?);
                Ok(out)
            }
            OutputFormat::Json => {
                let v = if header {
                    serde_json::json!({ "version": env!("CARGO_PKG_VERSION"), "data": self.json })
                } else {
                    self.json.clone()
                };
                let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Internal(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
        }
    }
}

fn version_line() -> String {
    format!("planar-census {}", env!("CARGO_PKG_VERSION"))
}

fn markdown(headers: &[&str], rows: &[Vec<String>]) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = format!("| {} |\n", headers.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| esc(c)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

fn csv_text(headers: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(headers).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
