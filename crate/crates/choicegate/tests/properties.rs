//! Property tests: adapter determinism for every mock over random profiles
//! and seeds, anonymity of the utilitarian mocks, and canonical JSON
//! idempotence.

use proptest::prelude::*;

use choicegate::audit::{anonymity_score_exhaustive, ScfAdapter};
use choicegate::harness::mocks::{
    DictatorialMock, IgnoringMock, RandomMock, UtilitarianMock,
};
use choicegate::harness::report::canonical_json;
use choicegate::prefs::{AuditSuite, Ballot, Instance, Outcome, PreferenceProfile};

/// Random cardinal profile over m outcomes with utilities from a coarse
/// grid (ties included on purpose).
fn arb_instance() -> impl Strategy<Value = Instance> {
    (2usize..=4, 2usize..=4).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(0u8..=10, m), n).prop_map(
            move |rows| {
                let outcome_ids: Vec<String> = (0..m).map(|o| format!("o{o}")).collect();
                let ballots: Vec<(String, Ballot)> = rows
                    .iter()
                    .enumerate()
                    .map(|(s, row)| {
                        let utilities: Vec<(String, f64)> = outcome_ids
                            .iter()
                            .zip(row)
                            .map(|(o, u)| (o.clone(), f64::from(*u) / 10.0))
                            .collect();
                        (format!("s{s}"), Ballot::cardinal(utilities))
                    })
                    .collect();
                Instance {
                    instance_id: "prop".to_string(),
                    input: String::new(),
                    outcomes: outcome_ids.iter().map(Outcome::new).collect(),
                    profile: PreferenceProfile::new(ballots),
                }
            },
        )
    })
}

fn mocks() -> Vec<Box<dyn ScfAdapter>> {
    vec![
        Box::new(DictatorialMock::new(0)),
        Box::new(IgnoringMock::new(11)),
        Box::new(UtilitarianMock::new()),
        Box::new(UtilitarianMock::weighted()),
        Box::new(RandomMock::new(11)),
    ]
}

proptest! {
    /// Every mock is a function of (instance, profile, seed): repeated
    /// evaluation returns the same outcome, always from the outcome set.
    #[test]
    fn mocks_are_deterministic(inst in arb_instance(), seed in any::<u64>()) {
        for mock in mocks() {
            let a = mock.evaluate(&inst, Some(&inst.profile), seed).unwrap();
            let b = mock.evaluate(&inst, Some(&inst.profile), seed).unwrap();
            prop_assert_eq!(&a, &b, "mock {} not deterministic", mock.label());
            prop_assert!(inst.has_outcome(&a));
        }
    }

    /// Utilitarian aggregation ignores ballot positions entirely, so the
    /// exhaustive anonymity score is exactly 1.0 on any suite.
    #[test]
    fn utilitarian_is_anonymous(inst in arb_instance(), seed in any::<u64>()) {
        let _ = seed;
        let suite = AuditSuite { suite_id: "prop".to_string(), instances: vec![inst] };
        for mock in [UtilitarianMock::new(), UtilitarianMock::weighted()] {
            let score = anonymity_score_exhaustive(&mock, &suite).unwrap();
            prop_assert_eq!(score.score, 1.0);
            prop_assert!(score.witnesses.is_empty());
        }
    }

    /// Canonical JSON is a fixed point: rendering a reparsed document
    /// reproduces the same bytes.
    #[test]
    fn canonical_json_is_idempotent(inst in arb_instance()) {
        let suite = AuditSuite { suite_id: "prop".to_string(), instances: vec![inst] };
        let once = canonical_json(&suite).unwrap();
        let reparsed: AuditSuite = serde_json::from_str(&once).unwrap();
        let twice = canonical_json(&reparsed).unwrap();
        prop_assert_eq!(once, twice);
    }
}
