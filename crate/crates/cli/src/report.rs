//! JSON verification reports. The layout is described by
//! `docs/report.schema.json`; bump [`SCHEMA_VERSION`] on any change.

use std::fmt;
use std::time::Duration;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    /// Short statement of the claim the record checks.
    pub anchor: String,
    pub status: Status,
    /// Residuals or witnesses, printed canonically.
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    pub wall_ms: f64,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, status: Status, detail: impl Into<String>) -> Record {
        Record { name: name.into(), anchor: anchor.into(), status, detail: detail.into(), data: None, wall_ms: 0.0 }
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Record {
        self.data = Some(data);
        self
    }

    pub fn timed(mut self, elapsed: Duration) -> Record {
        self.wall_ms = (elapsed.as_secs_f64() * 1e6).round() / 1e3;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub field: String,
    pub command: Vec<String>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(field: impl Into<String>, command: Vec<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            field: field.into(),
            command,
            records: Vec::new(),
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per record followed by a tally.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("{:<13} {:<40} {:>9.1} ms  {}\n", format!("[{}]", r.status), r.name, r.wall_ms, r.detail));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} inconclusive, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive),
            self.count(Status::Skipped)
        ));
        out
    }
}
