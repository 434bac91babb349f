//! Executes the bundled full-pipeline scenario: data-mix portioning, then
//! evaluation-metric committee selection, then gold-label estimation, then
//! an axiom audit of the utilitarian mock — one canonical JSON report per
//! stage plus a digest manifest.
//!
//! Run with: cargo run --example scenario_pipeline

use std::fs;
use std::path::Path;

use choicegate::harness::scenario::{run_scenario, ScenarioConfig};

fn main() -> choicegate::Result<()> {
    let manifest_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let config = ScenarioConfig::load(&manifest_dir.join("fixtures/scenario-full.json"))?;

    // the fixture's suite path is relative to the workspace root
    std::env::set_current_dir(manifest_dir.join("../.."))?;
    let out_dir = std::env::temp_dir().join("choicegate-scenario-demo");
    let manifest = run_scenario(&config, &out_dir)?;

    println!("scenario: {}", manifest.scenario);
    for record in &manifest.completed {
        println!("  {} -> {} (digest {})", record.stage, record.file, record.digest);
    }
    println!("\nreports written to {}", out_dir.display());
    let audit = fs::read_to_string(out_dir.join(&manifest.completed[3].file))?;
    println!("audit stage excerpt:\n{}", &audit[..audit.len().min(400)]);
    Ok(())
}
