//! Verification reports: paired (prediction, oracle) rows with a tolerance
//! verdict, serialised to CSV and JSON.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

/// One verification row, keyed by the evaluation abscissa.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerificationRow {
    pub u: f64,
    pub predicted_log: f64,
    pub oracle_log: f64,
    /// `exp(predicted_log - oracle_log)`.
    pub ratio: f64,
    /// `|ratio - 1| <= tolerance` for the tolerance this row was checked at.
    pub pass: bool,
}

/// A collection of verification rows plus the metadata needed to reproduce
/// them.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub method: String,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub all_pass: bool,
    pub rows: Vec<VerificationRow>,
    /// Echo of every effective parameter; campaign files are the single
    /// source of experiment truth and must be auditable from the output.
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
}

impl VerificationReport {
    pub fn new(case_id: impl Into<String>, method: impl Into<String>, tolerance: f64) -> Self {
        Self {
            case_id: case_id.into(),
            method: method.into(),
            tolerance,
            seed: None,
            all_pass: true,
            rows: Vec::new(),
            params: serde_json::Value::Null,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_params(mut self, params: serde_json::Value) -> Self {
        self.params = params;
        self
    }

    /// Append a row checked at the report-level tolerance.
    pub fn push(&mut self, u: f64, predicted_log: f64, oracle_log: f64) {
        self.push_with_tolerance(u, predicted_log, oracle_log, self.tolerance);
    }

    /// Append a row checked at a row-specific tolerance.
    pub fn push_with_tolerance(
        &mut self,
        u: f64,
        predicted_log: f64,
        oracle_log: f64,
        tolerance: f64,
    ) {
        let ratio = (predicted_log - oracle_log).exp();
        let pass = (ratio - 1.0).abs() <= tolerance;
        self.all_pass &= pass;
        self.rows.push(VerificationRow { u, predicted_log, oracle_log, ratio, pass });
    }

    pub fn all_pass(&self) -> bool {
        self.all_pass
    }

    pub fn file_stem(&self) -> String {
        format!("{}_{}", self.case_id, self.method)
    }

    /// CSV rendering: `u,predicted_log,oracle_log,ratio,pass`, floats in
    /// shortest round-trip form for byte-stable reruns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,predicted_log,oracle_log,ratio,pass\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.u, r.predicted_log, r.oracle_log, r.ratio, r.pass
            )
            .expect("write to string");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialisation");
        s.push('\n');
        s
    }

    /// Write `{case_id}_{method}.csv` and `.json` atomically (temp file +
    /// rename) into `dir`; returns the two paths.
    pub fn write_files(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        let csv_path = dir.join(format!("{}.csv", self.file_stem()));
        let json_path = dir.join(format!("{}.json", self.file_stem()));
        write_atomic(&csv_path, self.to_csv().as_bytes())?;
        write_atomic(&json_path, self.to_json().as_bytes())?;
        Ok((csv_path, json_path))
    }
}

/// Write via a temp file in the same directory followed by a rename, so a
/// crash never leaves a half-written report.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().ok_or_else(|| Error::Domain("path has no parent".into()))?;
    fs::create_dir_all(dir)
        .map_err(|e| Error::Numerical(format!("creating {}: {e}", dir.display())))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| Error::Numerical(format!("writing {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| Error::Numerical(format!("renaming into {}: {e}", path.display())))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_verdict() {
        let mut rep = VerificationReport::new("case", "quad", 0.05);
        rep.push(10.0, -10.0, -10.02);
        rep.push(20.0, -20.0, -20.2);
        assert!(rep.rows[0].pass);
        assert!(!rep.rows[1].pass);
        assert!(!rep.all_pass());
        assert!((rep.rows[0].ratio - (0.02f64).exp()).abs() < 1e-12);
        for r in &rep.rows {
            assert!(r.ratio > 0.0);
            assert_eq!(r.pass, (r.ratio - 1.0).abs() <= rep.tolerance);
        }
    }

    #[test]
    fn csv_shape() {
        let mut rep = VerificationReport::new("c", "m", 0.1).with_seed(7);
        rep.push(30.0, -31.5, -31.4);
        let csv = rep.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "u,predicted_log,oracle_log,ratio,pass");
        let row = lines.next().unwrap();
        assert!(row.starts_with("30,-31.5,-31.4,"));
        assert!(row.ends_with(",false") || row.ends_with(",true"));
    }

    #[test]
    fn files_roundtrip() {
        let dir = std::env::temp_dir().join(format!("tailasym-report-{}", std::process::id()));
        let mut rep = VerificationReport::new("anchor", "quad", 0.05);
        rep.push(10.0, -11.3, -11.4);
        let (csv, json) = rep.write_files(&dir).unwrap();
        assert_eq!(csv.file_name().unwrap(), "anchor_quad.csv");
        let parsed: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(parsed["case_id"], "anchor");
        fs::remove_dir_all(&dir).ok();
    }
}
