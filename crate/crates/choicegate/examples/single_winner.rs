//! Elects a single winner from strict rankings under plurality, Borda, and
//! Condorcet, showing how the rules can disagree and how Condorcet reports
//! that no winner exists instead of silently falling back.
//!
//! Run with: cargo run --example single_winner

use choicegate::prefs::{Ballot, PreferenceProfile};
use choicegate::voting::{single_winner, SingleWinnerRule};

fn main() -> choicegate::Result<()> {
    let profile = PreferenceProfile::new(vec![
        ("authority", Ballot::ranking(vec!["broad-overview", "top-cs-degrees", "game-design"])),
        ("parents", Ballot::ranking(vec!["top-cs-degrees", "broad-overview", "game-design"])),
        ("students", Ballot::ranking(vec!["game-design", "top-cs-degrees", "broad-overview"])),
    ]);

    for rule in [
        SingleWinnerRule::Plurality,
        SingleWinnerRule::Borda,
        SingleWinnerRule::Condorcet,
    ] {
        let result = single_winner(&profile, rule)?;
        println!("{rule:?}: winners={:?} scores={:?}", result.winners, result.scores);
    }

    // a Condorcet cycle: every candidate loses some pairwise contest
    let cycle = PreferenceProfile::new(vec![
        ("v1", Ballot::ranking(vec!["a", "b", "c"])),
        ("v2", Ballot::ranking(vec!["b", "c", "a"])),
        ("v3", Ballot::ranking(vec!["c", "a", "b"])),
    ]);
    let result = single_winner(&cycle, SingleWinnerRule::Condorcet)?;
    println!(
        "Condorcet cycle: winners={:?} none-exists={}",
        result.winners, result.none_exists
    );
    Ok(())
}
