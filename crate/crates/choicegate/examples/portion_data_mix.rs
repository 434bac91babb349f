//! Divides a training-data budget across source types three ways: the
//! weighted mean of cardinal ballots, the equal split of approval ballots,
//! and the mean restricted to types surviving a veto filter.
//!
//! Run with: cargo run --example portion_data_mix

use choicegate::portioning::{equal_split_portion, mean_portion, portion_with_exclusion};
use choicegate::prefs::{Ballot, PreferenceProfile};

fn main() -> choicegate::Result<()> {
    let types: Vec<String> = ["encyclopedia", "forums", "news"]
        .iter()
        .map(|s| s.to_string())
        .collect();

    let cardinal = PreferenceProfile::new(vec![
        ("curator-1", Ballot::cardinal(vec![("news", 0.6), ("forums", 0.3), ("encyclopedia", 0.1)])),
        ("curator-2", Ballot::cardinal(vec![("news", 0.2), ("forums", 0.2), ("encyclopedia", 0.6)])),
        ("curator-3", Ballot::cardinal(vec![("news", 0.1), ("forums", 0.6), ("encyclopedia", 0.3)])),
    ]);
    println!("mean portion: {:?}", mean_portion(&cardinal, &types)?.mass);

    let approvals = PreferenceProfile::new(vec![
        ("curator-1", Ballot::approval(vec!["news", "forums"])),
        ("curator-2", Ballot::approval(vec!["encyclopedia"])),
        ("curator-3", Ballot::approval(vec!["forums"])),
    ]);
    println!("equal split: {:?}", equal_split_portion(&approvals, &types)?.mass);

    // two of three curators veto forums; the mean is recomputed over the rest
    let vetoes = PreferenceProfile::new(vec![
        ("curator-1", Ballot::veto(vec!["forums"])),
        ("curator-2", Ballot::veto(vec!["forums"])),
        ("curator-3", Ballot::veto(Vec::<&str>::new())),
    ]);
    let filtered = portion_with_exclusion(&cardinal, &vetoes, &types, 0.5)?;
    println!("veto-filtered mean: {:?}", filtered.mass);
    Ok(())
}
