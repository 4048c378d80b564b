//! Machine-readable verification reports.
//!
//! Reports are JSON with every floating-point number printed at 17
//! significant digits, which round-trips doubles losslessly and keeps the
//! bytes reproducible. File output goes through a temp file plus rename.

use crate::config::SuiteConfig;
use projlogic_core::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The mathematical statement the check verifies, or "plumbing".
    pub law: String,
    pub n_trials: u64,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub details: String,
}

impl CheckRecord {
    /// Numeric check: passes iff the measured error is within tolerance.
    pub fn numeric(
        name: &str,
        law: &str,
        n_trials: u64,
        max_error: f64,
        tolerance: f64,
        details: impl Into<String>,
    ) -> Self {
        let max_error = if max_error.is_finite() {
            max_error
        } else {
            f64::MAX
        };
        Self {
            name: name.to_string(),
            law: law.to_string(),
            n_trials,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
            details: details.into(),
        }
    }

    /// Witness-style check: `ok` encodes whether the expected outcome was
    /// observed; counterexamples go into the details.
    pub fn witness(
        name: &str,
        law: &str,
        n_trials: u64,
        ok: bool,
        details: impl Into<String>,
    ) -> Self {
        Self {
            name: name.to_string(),
            law: law.to_string(),
            n_trials,
            max_error: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
            details: details.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtifactInfo {
    pub name: String,
    pub version: String,
}

/// Echo of the configuration that produced a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub suites: Vec<String>,
    pub tol_overrides: BTreeMap<String, f64>,
    pub family: Option<String>,
    pub operators: Vec<String>,
}

impl ConfigEcho {
    pub fn from_config(config: &SuiteConfig) -> Self {
        Self {
            dim: config.dim,
            samples: config.n_samples,
            seed: config.seed,
            suites: config.suites.iter().map(|s| s.as_str().to_string()).collect(),
            tol_overrides: config.tol_overrides.clone(),
            family: config
                .family
                .as_ref()
                .map(|p| p.display().to_string()),
            operators: config
                .operators
                .iter()
                .map(|p| p.display().to_string())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub artifact: ArtifactInfo,
    pub config: ConfigEcho,
    pub timestamp: String,
    pub checks: Vec<CheckRecord>,
}

impl ReportDocument {
    pub fn new(config: &SuiteConfig, checks: Vec<CheckRecord>) -> Self {
        Self {
            artifact: ArtifactInfo {
                name: "projlogic".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            config: ConfigEcho::from_config(config),
            timestamp: timestamp_rfc3339(),
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Report generation time. Honors the SOURCE_DATE_EPOCH convention so that
/// reports can be byte-reproducible; wall clock otherwise.
fn timestamp_rfc3339() -> String {
    let seconds = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse::<i64>().ok())
        .unwrap_or_else(|| chrono::Utc::now().timestamp());
    chrono::DateTime::from_timestamp(seconds, 0)
        .unwrap_or_default()
        .format("%Y-%m-%dT%H:%M:%SZ")
        .to_string()
}

/// JSON formatter printing floats at 17 significant digits.
struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.7e}")
    }
}

/// Serialize a report to its canonical byte representation.
pub fn render_report(report: &ReportDocument) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    report
        .serialize(&mut serializer)
        .map_err(|e| Error::Parse {
            path: "<report>".into(),
            message: e.to_string(),
        })?;
    out.push(b'\n');
    Ok(out)
}

/// Write the report atomically (temp file in the target directory, then
/// rename).
pub fn emit_report(report: &ReportDocument, path: &Path) -> Result<()> {
    let bytes = render_report(report)?;
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp_path = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("report")
        )),
        None => Path::new(&format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("report")
        ))
        .to_path_buf(),
    };
    let io_err = |source: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    std::fs::write(&tmp_path, &bytes).map_err(io_err)?;
    std::fs::rename(&tmp_path, path).map_err(io_err)?;
    Ok(())
}

pub fn parse_report(path: &Path) -> Result<ReportDocument> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SuiteName;

    fn sample_config() -> SuiteConfig {
        SuiteConfig::new(2, 1000, 7, vec![SuiteName::Star]).unwrap()
    }

    #[test]
    fn floats_round_trip_at_full_precision() {
        let mut config = sample_config();
        config.apply_tol_override("probe", 1.0 / 3.0).unwrap();
        let checks = vec![
            CheckRecord::numeric("a", "plumbing", 10, 1.0 / 3.0, 0.5, ""),
            CheckRecord::numeric("b", "plumbing", 10, 0.1 + 0.2, 1e-300, "sum"),
            CheckRecord::witness("c", "plumbing", 1, false, "witness text"),
        ];
        let report = ReportDocument::new(&config, checks);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        emit_report(&report, &path).unwrap();
        let parsed = parse_report(&path).unwrap();
        assert_eq!(parsed, report);
        assert_eq!(parsed.checks[1].max_error, 0.1 + 0.2);
        assert!(!parsed.all_passed());
    }

    #[test]
    fn empty_record_list_is_a_valid_passing_report() {
        let report = ReportDocument::new(&sample_config(), Vec::new());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.json");
        emit_report(&report, &path).unwrap();
        let parsed = parse_report(&path).unwrap();
        assert!(parsed.checks.is_empty());
        assert!(parsed.all_passed());
    }

    #[test]
    fn rendering_is_deterministic_under_pinned_epoch() {
        std::env::set_var("SOURCE_DATE_EPOCH", "1700000000");
        let report = ReportDocument::new(
            &sample_config(),
            vec![CheckRecord::numeric("x", "plumbing", 5, 1e-12, 1e-9, "")],
        );
        let again = ReportDocument::new(
            &sample_config(),
            vec![CheckRecord::numeric("x", "plumbing", 5, 1e-12, 1e-9, "")],
        );
        assert_eq!(render_report(&report).unwrap(), render_report(&again).unwrap());
        std::env::remove_var("SOURCE_DATE_EPOCH");
    }

    #[test]
    fn witness_records_keep_the_pass_invariant() {
        let ok = CheckRecord::witness("w", "plumbing", 1, true, "");
        assert!(ok.passed && ok.max_error <= ok.tolerance);
        let bad = CheckRecord::witness("w", "plumbing", 1, false, "counterexample");
        assert!(!bad.passed && bad.max_error > bad.tolerance);
    }
}
