//! Canonical serialization and report emission. Reports are emitted with
//! lexicographic key order and full float precision so that repeated runs
//! are byte-identical.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::audit::AuditReport;
use crate::error::Result;

/// Serializes any value to canonical JSON: lexicographically sorted keys,
/// two-space indentation, trailing newline, LF endings.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    // going through Value sorts object keys (serde_json maps are BTreeMaps)
    let value = serde_json::to_value(value)?;
    let mut out = serde_json::to_string_pretty(&value)?;
    out.push('\n');
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    TextSummary,
}

impl ReportFormat {
    pub fn parse(name: &str) -> crate::error::Result<ReportFormat> {
        match name {
            "json" => Ok(ReportFormat::Json),
            "text-summary" => Ok(ReportFormat::TextSummary),
            other => Err(crate::error::Error::validation(format!(
                "unknown report format: {other}"
            ))),
        }
    }
}

/// One line per axiom with the score to 4 decimals.
pub fn text_summary(report: &AuditReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "suite {} system {} seed {}\n",
        report.suite_id, report.system, report.config.seed
    ));
    for score in &report.scores {
        out.push_str(&format!(
            "{} {:.4} ({} of {} checks, {} skipped, {} witnesses)\n",
            score.axiom.name(),
            score.score,
            score.satisfied,
            score.checks,
            score.skipped,
            score.witnesses.len()
        ));
    }
    out
}

/// Renders and writes a report in the requested format.
pub fn emit_report(report: &AuditReport, format: ReportFormat, path: &Path) -> Result<()> {
    let rendered = match format {
        ReportFormat::Json => canonical_json(report)?,
        ReportFormat::TextSummary => text_summary(report),
    };
    fs::write(path, rendered)?;
    Ok(())
}
