//! Audits two mock decision systems against the social-choice axioms on the
//! bundled chatbot fixture suite and prints their score summaries side by
//! side. The utilitarian mock scores high across the board; the dictatorial
//! mock fails anonymity badly.
//!
//! Run with: cargo run --example audit_mocks

use std::path::Path;

use choicegate::audit::{run_audit, AuditConfig};
use choicegate::harness::mocks::{DictatorialMock, UtilitarianMock};
use choicegate::harness::report::text_summary;
use choicegate::harness::suite::load_suite;

fn main() -> choicegate::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let suite = load_suite(&fixtures.join("chatbot-suite.json"))?;
    let config = AuditConfig::default();

    for (name, report) in [
        ("utilitarian", run_audit(&UtilitarianMock::new(), &suite, &config)?),
        ("dictatorial", run_audit(&DictatorialMock::new(0), &suite, &config)?),
    ] {
        println!("=== {name} ===");
        print!("{}", text_summary(&report));
        for score in &report.scores {
            for witness in &score.witnesses {
                println!(
                    "  witness ({}): instance {} prefers {} over {}",
                    score.axiom.name(),
                    witness.instance_id,
                    witness.outcomes.1,
                    witness.outcomes.0
                );
            }
        }
        println!();
    }
    Ok(())
}
