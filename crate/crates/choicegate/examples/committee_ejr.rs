//! Selects evaluation-metric committees from approval ballots under AV,
//! sequential PAV, and exact PAV, then checks the winning committees for
//! extended justified representation (EJR).
//!
//! Run with: cargo run --example committee_ejr

use choicegate::prefs::{Ballot, PreferenceProfile};
use choicegate::voting::{approval_committee, ejr_satisfied, CommitteeRule};

fn main() -> choicegate::Result<()> {
    // two camps: a large accuracy camp and a smaller fairness camp
    let profile = PreferenceProfile::new(vec![
        ("s1", Ballot::approval(vec!["accuracy", "calibration"])),
        ("s2", Ballot::approval(vec!["accuracy", "calibration"])),
        ("s3", Ballot::approval(vec!["accuracy", "robustness"])),
        ("s4", Ballot::approval(vec!["fairness", "robustness"])),
        ("s5", Ballot::approval(vec!["fairness"])),
    ]);

    for rule in [CommitteeRule::Av, CommitteeRule::SeqPav, CommitteeRule::PavExact] {
        let result = approval_committee(&profile, None, 2, rule)?;
        let (ok, witness) = ejr_satisfied(&profile, &result.winners)?;
        println!("{rule:?}: committee={:?} ejr={ok}", result.winners);
        if let Some(w) = witness {
            println!(
                "  EJR violated by group {:?} ({}-cohesive on {:?})",
                w.members, w.cohesiveness, w.common_approved
            );
        }
    }
    Ok(())
}
