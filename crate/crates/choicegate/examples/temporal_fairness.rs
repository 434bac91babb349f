//! Runs the credit rule over the bundled neglect fixture: two large
//! institutions outvote a small one every round, but the small one's credit
//! grows until it wins every third round — its exact proportional share.
//! Group and individual fairness audits confirm no violation.
//!
//! Run with: cargo run --example temporal_fairness

use std::fs;
use std::path::Path;

use choicegate::prefs::Instance;
use choicegate::temporal::{
    group_proportionality_audit, individual_neglect_audit, run_credit_sequence, GroupSpec,
};

fn main() -> choicegate::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let rounds: Vec<Instance> =
        serde_json::from_str(&fs::read_to_string(fixtures.join("temporal-rounds.json"))?)?;
    let groups: Vec<GroupSpec> =
        serde_json::from_str(&fs::read_to_string(fixtures.join("temporal-groups.json"))?)?;
    let roster: Vec<String> = ["uni-big-a", "uni-big-b", "uni-small"]
        .iter()
        .map(|s| s.to_string())
        .collect();

    let (log, trace) = run_credit_sequence(&roster, &rounds)?;
    for (r, round) in log.rounds.iter().enumerate() {
        println!(
            "round {r}: chose {:<10} credit before: {:?}",
            round.chosen, trace.rounds[r]
        );
    }

    println!("\ngroup audit:");
    for entry in group_proportionality_audit(&log, &groups, 0.0)? {
        println!(
            "  {}: rate {:.3} vs required {:.3} -> violated={}",
            entry.group_id, entry.satisfaction_rate, entry.required_share, entry.violated
        );
    }

    let neglect = individual_neglect_audit(&log, 3)?;
    println!("\nneglect runs of >= 3 rounds: {neglect:?}");
    Ok(())
}
