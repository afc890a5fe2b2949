//! Structured command output: one envelope per invocation, rendered as
//! human-readable text, JSON (big integers as decimal strings), or CSV with
//! a fixed column set per command.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotApplicable,
    Unknown,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotApplicable => "not_applicable",
            Status::Unknown => "unknown",
            Status::Error => "error",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NotApplicable | Status::Unknown => 2,
            Status::Error => 1,
        }
    }
}

/// CSV payload: fixed header plus data rows. Commands with nothing tabular
/// to say on failure leave it empty; the reason goes to stderr.
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub status: Status,
    pub reason: Option<String>,
    pub results: Value,
    pub text: String,
    pub csv: CsvTable,
}

impl Envelope {
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::String(self.command.into()));
        map.insert("inputs".into(), Value::Object(self.inputs.clone()));
        map.insert("status".into(), Value::String(self.status.as_str().into()));
        if let Some(reason) = &self.reason {
            map.insert("reason".into(), Value::String(reason.clone()));
        }
        map.insert("results".into(), self.results.clone());
        Value::Object(map)
    }

    /// Render to stdout (reasons for non-ok statuses also go to stderr in
    /// text and CSV modes) and return the exit code.
    pub fn emit(&self, format: OutputFormat) -> u8 {
        match format {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string_pretty(&self.to_json()).expect("valid json"));
            }
            OutputFormat::Text => {
                if !self.text.is_empty() {
                    println!("{}", self.text.trim_end());
                }
                if let Some(reason) = &self.reason {
                    eprintln!("{}: {}", self.status.as_str(), reason);
                }
            }
            OutputFormat::Csv => {
                if !self.csv.header.is_empty() {
                    let mut writer = csv::Writer::from_writer(Vec::new());
                    writer.write_record(&self.csv.header).expect("csv header");
                    for row in &self.csv.rows {
                        writer.write_record(row).expect("csv row");
                    }
                    let bytes = writer.into_inner().expect("csv flush");
                    print!("{}", String::from_utf8(bytes).expect("csv is utf-8"));
                }
                if let Some(reason) = &self.reason {
                    eprintln!("{}: {}", self.status.as_str(), reason);
                }
            }
        }
        self.status.exit_code()
    }

    /// A failed invocation: no payload beyond the reason.
    pub fn failure(command: &'static str, inputs: Map<String, Value>, reason: String) -> Self {
        Envelope {
            command,
            inputs,
            status: Status::Error,
            reason: Some(reason),
            results: Value::Object(Map::new()),
            text: String::new(),
            csv: CsvTable::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}
