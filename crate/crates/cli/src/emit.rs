//! Record emission: NDJSON streamed line by line, CSV buffered so the header
//! can cover every column. Keys inside a record are alphabetical (serde_json
//! maps are ordered), and each record carries a "seq" counter, so output
//! bytes are a pure function of the run configuration.

use std::io::Write;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Ndjson,
    Csv,
}

pub struct Emitter {
    format: Format,
    seq: u64,
    buffered: Vec<Map<String, Value>>,
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        Emitter { format, seq: 0, buffered: Vec::new() }
    }

    pub fn record(&mut self, value: Value) -> std::io::Result<()> {
        let Value::Object(mut obj) = value else {
            panic!("records must be JSON objects");
        };
        obj.insert("seq".to_string(), Value::from(self.seq));
        self.seq += 1;
        match self.format {
            Format::Ndjson => {
                let mut out = std::io::stdout().lock();
                serde_json::to_writer(&mut out, &Value::Object(obj))?;
                out.write_all(b"\n")
            }
            Format::Csv => {
                self.buffered.push(obj);
                Ok(())
            }
        }
    }

    pub fn finish(self) -> std::io::Result<()> {
        if self.format != Format::Csv {
            return Ok(());
        }
        let mut columns: Vec<String> = Vec::new();
        for rec in &self.buffered {
            for key in rec.keys() {
                if !columns.contains(key) {
                    columns.push(key.clone());
                }
            }
        }
        columns.sort();
        let mut out = std::io::stdout().lock();
        writeln!(out, "{}", columns.join(","))?;
        for rec in &self.buffered {
            let row: Vec<String> = columns
                .iter()
                .map(|c| rec.get(c).map(csv_cell).unwrap_or_default())
                .collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}
