//! Computes the proportional veto core from strict rankings: the set of
//! outcomes no coalition can block with its proportional veto capacity.
//! The core is never empty and shrinks as preferences align.
//!
//! Run with: cargo run --example veto_core_demo

use choicegate::prefs::{Ballot, PreferenceProfile};
use choicegate::voting::veto_core;

fn main() -> choicegate::Result<()> {
    // unanimous profile: the core collapses to the common favourite
    let unanimous = PreferenceProfile::new(vec![
        ("s1", Ballot::ranking(vec!["a", "b", "c"])),
        ("s2", Ballot::ranking(vec!["a", "b", "c"])),
        ("s3", Ballot::ranking(vec!["a", "b", "c"])),
    ]);
    println!("unanimous: core = {:?}", veto_core(&unanimous)?);

    // opposed pair: each voter can veto the other's favourite outcome,
    // leaving the compromise in the core
    let opposed = PreferenceProfile::new(vec![
        ("s1", Ballot::ranking(vec!["a", "b", "c"])),
        ("s2", Ballot::ranking(vec!["c", "b", "a"])),
    ]);
    println!("opposed: core = {:?}", veto_core(&opposed)?);
    Ok(())
}
