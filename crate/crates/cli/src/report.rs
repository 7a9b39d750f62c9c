//! Report assembly and output in JSON or CSV.

use std::fs;
use std::io::{self, Write};

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};

/// A finished command: the report plus what the process should do next.
pub struct Report {
    pub config: RunConfig,
    /// Top-level JSON members besides `config` and `results`.
    pub extra: Vec<(String, Value)>,
    pub results: Vec<Value>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    /// Human-readable lines such as PASS/FAIL verdicts.
    pub lines: Vec<String>,
    pub exit_code: u8,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("config".into(), serde_json::to_value(&self.config).expect("config serializes"));
        for (k, v) in &self.extra {
            obj.insert(k.clone(), v.clone());
        }
        obj.insert("results".into(), Value::Array(self.results.clone()));
        Value::Object(obj)
    }

    /// CSV with the resolved config as a leading `#` comment line.
    pub fn to_csv(&self) -> io::Result<String> {
        let mut buf = Vec::new();
        let config = serde_json::to_string(&self.config).expect("config serializes");
        writeln!(buf, "# config: {config}")?;
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&self.csv_header)?;
            for row in &self.csv_rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn render(&self) -> io::Result<String> {
        match self.config.output_format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json()).expect("json serializes") + "\n"),
            Format::Csv => self.to_csv(),
        }
    }

    /// Writes the report to `--out` or standard output. Verdict lines go
    /// to standard output when the report goes to a file, to standard
    /// error otherwise.
    pub fn emit(&self) -> io::Result<()> {
        let text = self.render()?;
        match &self.config.out {
            Some(path) => {
                fs::write(path, text)?;
                let mut out = io::stdout().lock();
                for l in &self.lines {
                    writeln!(out, "{l}")?;
                }
            }
            None => {
                io::stdout().lock().write_all(text.as_bytes())?;
                let mut err = io::stderr().lock();
                for l in &self.lines {
                    writeln!(err, "{l}")?;
                }
            }
        }
        Ok(())
    }
}

/// A real number for CSV: shortest round-trip form, empty for NaN.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:e}")
    }
}

/// JSON for a real number; NaN becomes `null`.
pub fn jnum(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}
