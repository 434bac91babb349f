//! Suite ingestion: strict JSON loading with field-path diagnostics and
//! canonical saving so load→save round-trips bit-exact.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::report::canonical_json;
use crate::prefs::AuditSuite;

/// Parses a suite document from JSON text. Unknown keys are rejected and
/// schema errors name the JSON path of the offending field.
pub fn parse_suite(text: &str) -> Result<AuditSuite> {
    let deserializer = &mut serde_json::Deserializer::from_str(text);
    let suite: AuditSuite = serde_path_to_error::deserialize(deserializer)
        .map_err(|e| Error::validation(format!("suite schema error at {}: {}", e.path(), e.inner())))?;
    let violations = suite.validate();
    if !violations.is_empty() {
        return Err(Error::validation(format!(
            "invalid suite: {}",
            violations.join("; ")
        )));
    }
    Ok(suite)
}

pub fn load_suite(path: &Path) -> Result<AuditSuite> {
    let text = fs::read_to_string(path)?;
    parse_suite(&text)
}

pub fn save_suite(suite: &AuditSuite, path: &Path) -> Result<()> {
    fs::write(path, canonical_json(suite)?)?;
    Ok(())
}
