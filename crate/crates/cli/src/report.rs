//! Machine-readable run reports: JSON, CSV and plain-text emission with a
//! stable field order. Floats are printed with 12 significant digits;
//! exact values appear as `num/den`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper: Option<String>,
    pub computed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub items: Vec<ReportItem>,
    pub runtime_secs: f64,
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            seed,
            items: Vec::new(),
            runtime_secs: 0.0,
        }
    }

    pub fn set_parameter(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn any_failed(&self) -> bool {
        self.items.iter().any(|i| i.status == Status::Fail)
    }

    /// Process exit code: 0 all-pass, 1 any failure.
    pub fn exit_code(&self) -> i32 {
        if self.any_failed() {
            1
        } else {
            0
        }
    }
}

/// 12 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (json, csv, text)")),
        }
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("name,paper,computed,tol,status\n");
            for item in &report.items {
                let tol = item.tol.map(|t| format!("{t:e}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_escape(&item.name),
                    csv_escape(item.paper.as_deref().unwrap_or("")),
                    csv_escape(&item.computed),
                    tol,
                    item.status.as_str()
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "# {} (seed {})", report.command, report.seed);
            for (key, value) in &report.parameters {
                let _ = writeln!(out, "#   {key} = {value}");
            }
            let name_w = report
                .items
                .iter()
                .map(|i| i.name.len())
                .chain([4])
                .max()
                .unwrap();
            let paper_w = report
                .items
                .iter()
                .map(|i| i.paper.as_deref().unwrap_or("").len())
                .chain([5])
                .max()
                .unwrap();
            let _ = writeln!(
                out,
                "{:name_w$}  {:paper_w$}  {:28}  {:9}  status",
                "name", "paper", "computed", "tol"
            );
            for item in &report.items {
                let tol = item.tol.map(|t| format!("{t:.1e}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{:name_w$}  {:paper_w$}  {:28}  {:9}  {}",
                    item.name,
                    item.paper.as_deref().unwrap_or(""),
                    item.computed,
                    tol,
                    item.status.as_str()
                );
                if let Some(note) = &item.note {
                    let _ = writeln!(out, "{:name_w$}    - {note}", "");
                }
            }
            let _ = writeln!(out, "# runtime {:.3}s", report.runtime_secs);
            out
        }
    }
}

pub fn emit(report: &RunReport, format: Format, path: Option<&Path>) -> io::Result<()> {
    let rendered = render(report, format);
    match path {
        Some(path) => fs::write(path, rendered),
        None => io::stdout().write_all(rendered.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        let mut report = RunReport::new("verify conjecture", 0);
        report.set_parameter("tol", "1e-6");
        report.runtime_secs = 1.25;
        report.items.push(ReportItem {
            name: "cuboid_sup".into(),
            paper: Some("1/9".into()),
            computed: fmt_float(0.11111111111),
            tol: Some(1e-6),
            status: Status::Pass,
            note: None,
        });
        report
    }

    #[test]
    fn json_round_trips() {
        let report = sample();
        let json = render(&report, Format::Json);
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn csv_header_is_fixed() {
        let csv = render(&sample(), Format::Csv);
        assert!(csv.starts_with("name,paper,computed,tol,status\n"));
    }

    #[test]
    fn empty_report_renders_header_only_csv() {
        let report = RunReport::new("noop", 0);
        let csv = render(&report, Format::Csv);
        assert_eq!(csv, "name,paper,computed,tol,status\n");
    }

    #[test]
    fn float_formatting_has_twelve_significant_digits() {
        assert_eq!(fmt_float(1.0 / 9.0), "1.11111111111e-1");
    }
}
