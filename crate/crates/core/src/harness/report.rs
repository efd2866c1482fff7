//! Verification reports and their JSON/CSV serializations.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One measured inequality or identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// A record whose `measured` value must not exceed `limit`.
    pub fn at_most(check: &str, params: String, measured: f64, limit: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            params,
            measured,
            tolerance,
            pass: measured.is_finite() && measured <= limit,
        }
    }
}

/// Empirical range of a constant over a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub seed: u64,
    pub count: usize,
    pub sizes: Vec<usize>,
    pub operator: String,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub metadata: ReportMetadata,
    pub records: Vec<CheckRecord>,
    pub constants: Vec<ConstantEntry>,
    pub pass: bool,
}

impl VerificationReport {
    /// Sorts records and constants and recomputes the overall verdict. A
    /// non-finite number anywhere fails the report.
    pub fn new(metadata: ReportMetadata, mut records: Vec<CheckRecord>, mut constants: Vec<ConstantEntry>) -> Self {
        for r in &mut records {
            if !r.measured.is_finite() || !r.tolerance.is_finite() {
                r.pass = false;
            }
        }
        records.sort_by(|a, b| (&a.check, &a.params).cmp(&(&b.check, &b.params)));
        constants.sort_by(|a, b| a.name.cmp(&b.name));
        let constants_finite = constants.iter().all(|c| c.lo.is_finite() && c.hi.is_finite());
        let pass = constants_finite && records.iter().all(|r| r.pass);
        Self {
            metadata,
            records,
            constants,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::UnsupportedFormat(s.to_string())),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
        })
    }
}

/// Serializes the report. CSV has one row per record and a header even when empty.
pub fn render_report(report: &VerificationReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "params", "measured", "tolerance", "pass"])?;
            for r in &report.records {
                w.write_record([
                    r.check.clone(),
                    r.params.clone(),
                    r.measured.to_string(),
                    r.tolerance.to_string(),
                    r.pass.to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render_report(report, format)?)?;
    Ok(())
}

pub fn load_report(path: &Path) -> Result<VerificationReport> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metadata() -> ReportMetadata {
        ReportMetadata {
            seed: 1,
            count: 0,
            sizes: vec![],
            operator: "cycle(4) [raw_L]".into(),
            checks: vec![],
        }
    }

    #[test]
    fn empty_report_passes_and_csv_has_header() {
        let rep = VerificationReport::new(metadata(), vec![], vec![]);
        assert!(rep.pass);
        assert_eq!(
            render_report(&rep, ReportFormat::Csv).unwrap(),
            "check,params,measured,tolerance,pass\n"
        );
    }

    #[test]
    fn json_round_trip_and_sorting() {
        let recs = vec![
            CheckRecord::at_most("b", "x".into(), 0.5, 1.0, 0.0),
            CheckRecord::at_most("a", "y".into(), 2.0, 1.0, 0.0),
        ];
        let rep = VerificationReport::new(metadata(), recs, vec![]);
        assert_eq!(rep.records[0].check, "a");
        assert!(!rep.pass);
        let text = render_report(&rep, ReportFormat::Json).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn nan_fails() {
        let mut r = CheckRecord::at_most("a", String::new(), 0.0, 1.0, 0.0);
        r.measured = f64::NAN;
        r.pass = true;
        assert!(!VerificationReport::new(metadata(), vec![r], vec![]).pass);
        assert!(matches!("yaml".parse::<ReportFormat>(), Err(Error::UnsupportedFormat(_))));
    }
}
