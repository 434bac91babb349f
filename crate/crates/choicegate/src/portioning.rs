//! Distribution-valued collective decisions over divisible categories
//! (data types, runtime sources): weighted-mean portioning for cardinal
//! ballots, equal-split portioning for approvals and veto-based exclusion.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prefs::{Ballot, PreferenceProfile};

pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// A probability distribution over type ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub support: Vec<String>,
    pub mass: BTreeMap<String, f64>,
}

impl Distribution {
    pub fn new(support: Vec<String>, mass: BTreeMap<String, f64>) -> Result<Distribution> {
        let d = Distribution { support, mass };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let mut sum = 0.0;
        for id in &self.support {
            let m = self
                .mass
                .get(id)
                .ok_or_else(|| Error::validation(format!("no mass entry for type {id}")))?;
            if *m < -SIMPLEX_TOLERANCE || !m.is_finite() {
                return Err(Error::validation(format!("negative mass {m} for type {id}")));
            }
            sum += m;
        }
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::validation(format!("masses sum to {sum}, expected 1")));
        }
        Ok(())
    }
}

fn normalized_stakeholder_weights(profile: &PreferenceProfile) -> Result<BTreeMap<String, f64>> {
    let total = profile.total_weight();
    if total <= 0.0 {
        return Err(Error::validation("total stakeholder weight must be positive"));
    }
    Ok(profile
        .stakeholders
        .iter()
        .map(|s| (s.clone(), profile.weight(s) / total))
        .collect())
}

/// Each cardinal ballot is normalized onto the simplex, then averaged with
/// the stakeholders' normalized weights. Every ballot must cover all type
/// ids with nonnegative values, not all zero.
pub fn mean_portion(profile: &PreferenceProfile, type_ids: &[String]) -> Result<Distribution> {
    let shares = normalized_stakeholder_weights(profile)?;
    let mut mass: BTreeMap<String, f64> = type_ids.iter().map(|t| (t.clone(), 0.0)).collect();
    for s in &profile.stakeholders {
        let utilities = match profile.ballot(s)? {
            Ballot::Cardinal { utilities } => utilities,
            other => {
                return Err(Error::validation(format!(
                    "stakeholder {s}: expected cardinal ballot, got {}",
                    other.kind_name()
                )))
            }
        };
        let mut sum = 0.0;
        for t in type_ids {
            let u = utilities.get(t).ok_or_else(|| {
                Error::validation(format!("stakeholder {s}: ballot missing type {t}"))
            })?;
            if *u < 0.0 || !u.is_finite() {
                return Err(Error::validation(format!(
                    "stakeholder {s}: negative utility for type {t}"
                )));
            }
            sum += u;
        }
        if sum <= 0.0 {
            return Err(Error::validation(format!("stakeholder {s}: all-zero ballot")));
        }
        for t in type_ids {
            *mass.get_mut(t).unwrap() += shares[s] * utilities[t] / sum;
        }
    }
    Distribution::new(type_ids.to_vec(), mass)
}

/// Each stakeholder's normalized weight share is spread uniformly over
/// their approved types. Approval sets must be non-empty.
pub fn equal_split_portion(profile: &PreferenceProfile, type_ids: &[String]) -> Result<Distribution> {
    let shares = normalized_stakeholder_weights(profile)?;
    let known: BTreeSet<&str> = type_ids.iter().map(String::as_str).collect();
    let mut mass: BTreeMap<String, f64> = type_ids.iter().map(|t| (t.clone(), 0.0)).collect();
    for s in &profile.stakeholders {
        let approved = match profile.ballot(s)? {
            Ballot::Approval { approved } => approved,
            other => {
                return Err(Error::validation(format!(
                    "stakeholder {s}: expected approval ballot, got {}",
                    other.kind_name()
                )))
            }
        };
        if approved.is_empty() {
            return Err(Error::validation(format!(
                "stakeholder {s}: empty approval set"
            )));
        }
        for t in approved {
            if !known.contains(t.as_str()) {
                return Err(Error::validation(format!(
                    "stakeholder {s}: approval of unknown type {t}"
                )));
            }
        }
        let per_type = shares[s] / approved.len() as f64;
        for t in approved {
            *mass.get_mut(t).unwrap() += per_type;
        }
    }
    Distribution::new(type_ids.to_vec(), mass)
}

/// Excludes every type vetoed by stakeholders of total normalized weight
/// at least `threshold`. Errors if nothing survives.
pub fn veto_filter(
    profile: &PreferenceProfile,
    type_ids: &[String],
    threshold: f64,
) -> Result<Vec<String>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::validation(format!(
            "veto threshold must lie in (0, 1], got {threshold}"
        )));
    }
    let shares = normalized_stakeholder_weights(profile)?;
    let mut veto_weight: BTreeMap<&str, f64> = type_ids.iter().map(|t| (t.as_str(), 0.0)).collect();
    for s in &profile.stakeholders {
        let vetoed = match profile.ballot(s)? {
            Ballot::Veto { vetoed } => vetoed,
            other => {
                return Err(Error::validation(format!(
                    "stakeholder {s}: expected veto ballot, got {}",
                    other.kind_name()
                )))
            }
        };
        for t in vetoed {
            if let Some(w) = veto_weight.get_mut(t.as_str()) {
                *w += shares[s];
            }
        }
    }
    let admissible: Vec<String> = type_ids
        .iter()
        .filter(|t| veto_weight[t.as_str()] < threshold)
        .cloned()
        .collect();
    if admissible.is_empty() {
        return Err(Error::mechanism("no admissible types after veto filter"));
    }
    Ok(admissible)
}

/// Joint pre-selection: veto filter first, then mean portioning with each
/// cardinal ballot renormalized on the admissible types.
pub fn portion_with_exclusion(
    cardinal: &PreferenceProfile,
    veto: &PreferenceProfile,
    type_ids: &[String],
    threshold: f64,
) -> Result<Distribution> {
    let admissible = veto_filter(veto, type_ids, threshold)?;
    mean_portion(cardinal, &admissible)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn types(ids: &[&str]) -> Vec<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_stakeholder_mean_is_identity() {
        let p = PreferenceProfile::new(vec![(
            "s1",
            Ballot::cardinal(vec![("a", 0.2), ("b", 0.8)]),
        )]);
        let d = mean_portion(&p, &types(&["a", "b"])).unwrap();
        assert!((d.mass["a"] - 0.2).abs() < 1e-12);
        assert!((d.mass["b"] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn opposed_reports_split_evenly() {
        let p = PreferenceProfile::new(vec![
            ("s1", Ballot::cardinal(vec![("a", 1.0), ("b", 0.0)])),
            ("s2", Ballot::cardinal(vec![("a", 0.0), ("b", 1.0)])),
        ]);
        let d = mean_portion(&p, &types(&["a", "b"])).unwrap();
        assert!((d.mass["a"] - 0.5).abs() < 1e-12);
        assert!((d.mass["b"] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mean_portion_hand_arithmetic() {
        let p = PreferenceProfile::new(vec![
            ("s1", Ballot::cardinal(vec![("a", 0.5), ("b", 0.5), ("c", 0.0)])),
            ("s2", Ballot::cardinal(vec![("a", 0.1), ("b", 0.3), ("c", 0.6)])),
        ]);
        let d = mean_portion(&p, &types(&["a", "b", "c"])).unwrap();
        assert!((d.mass["a"] - 0.3).abs() < 1e-12);
        assert!((d.mass["b"] - 0.4).abs() < 1e-12);
        assert!((d.mass["c"] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn mean_portion_names_offending_stakeholder() {
        let p = PreferenceProfile::new(vec![("s1", Ballot::cardinal(vec![("a", 1.0)]))]);
        let err = mean_portion(&p, &types(&["a", "b"])).unwrap_err();
        assert!(err.to_string().contains("s1"));
        assert!(err.to_string().contains("b"));
    }

    #[test]
    fn equal_split_examples() {
        let p = PreferenceProfile::new(vec![("s1", Ballot::approval(vec!["a"]))]);
        let d = equal_split_portion(&p, &types(&["a", "b"])).unwrap();
        assert!((d.mass["a"] - 1.0).abs() < 1e-12);

        let p = PreferenceProfile::new(vec![
            ("s1", Ballot::approval(vec!["a", "b"])),
            ("s2", Ballot::approval(vec!["b"])),
        ]);
        let d = equal_split_portion(&p, &types(&["a", "b"])).unwrap();
        assert!((d.mass["a"] - 0.25).abs() < 1e-12);
        assert!((d.mass["b"] - 0.75).abs() < 1e-12);

        let p = PreferenceProfile::new((1..=5).map(|i| {
            (format!("s{i}"), Ballot::approval(vec!["a", "b", "c"]))
        }));
        let d = equal_split_portion(&p, &types(&["a", "b", "c"])).unwrap();
        for t in ["a", "b", "c"] {
            assert!((d.mass[t] - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_split_rejects_empty_approvals() {
        let p = PreferenceProfile::new(vec![("s1", Ballot::approval(Vec::<String>::new()))]);
        assert!(equal_split_portion(&p, &types(&["a"])).is_err());
    }

    #[test]
    fn equal_split_group_proportionality() {
        // group of 2 of 5 with disjoint approvals gets exactly 2/5
        let p = PreferenceProfile::new(vec![
            ("g1", Ballot::approval(vec!["x", "y"])),
            ("g2", Ballot::approval(vec!["x"])),
            ("o1", Ballot::approval(vec!["a"])),
            ("o2", Ballot::approval(vec!["b"])),
            ("o3", Ballot::approval(vec!["a", "b"])),
        ]);
        let d = equal_split_portion(&p, &types(&["a", "b", "x", "y"])).unwrap();
        assert!((d.mass["x"] + d.mass["y"] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn veto_filter_examples() {
        let nobody = PreferenceProfile::new(vec![
            ("s1", Ballot::veto(Vec::<String>::new())),
            ("s2", Ballot::veto(Vec::<String>::new())),
        ]);
        assert_eq!(
            veto_filter(&nobody, &types(&["a", "b"]), 0.5).unwrap(),
            types(&["a", "b"])
        );

        let two_of_three = PreferenceProfile::new(vec![
            ("s1", Ballot::veto(vec!["x"])),
            ("s2", Ballot::veto(vec!["x"])),
            ("s3", Ballot::veto(Vec::<String>::new())),
        ]);
        assert_eq!(
            veto_filter(&two_of_three, &types(&["a", "x"]), 0.5).unwrap(),
            types(&["a"])
        );

        // τ = 1.0 unreachable without unanimity
        assert_eq!(
            veto_filter(&two_of_three, &types(&["a", "x"]), 1.0).unwrap(),
            types(&["a", "x"])
        );
    }

    #[test]
    fn veto_filter_errors_when_everything_excluded() {
        let p = PreferenceProfile::new(vec![("s1", Ballot::veto(vec!["a", "b"]))]);
        assert!(veto_filter(&p, &types(&["a", "b"]), 0.5).is_err());
    }

    #[test]
    fn veto_filter_monotone_in_threshold() {
        let p = PreferenceProfile::new(vec![
            ("s1", Ballot::veto(vec!["x", "y"])),
            ("s2", Ballot::veto(vec!["x"])),
            ("s3", Ballot::veto(Vec::<String>::new())),
        ]);
        let ids = types(&["a", "x", "y"]);
        let mut prev: Option<Vec<String>> = None;
        for tau in [0.3, 0.5, 0.8, 1.0] {
            let adm = veto_filter(&p, &ids, tau).unwrap();
            if let Some(prev) = &prev {
                assert!(prev.iter().all(|t| adm.contains(t)));
            }
            prev = Some(adm);
        }
    }

    #[test]
    fn portion_with_exclusion_reduces_to_mean_without_vetoes() {
        let cardinal = PreferenceProfile::new(vec![
            ("s1", Ballot::cardinal(vec![("a", 0.5), ("b", 0.5)])),
            ("s2", Ballot::cardinal(vec![("a", 0.25), ("b", 0.75)])),
        ]);
        let veto = PreferenceProfile::new(vec![
            ("s1", Ballot::veto(Vec::<String>::new())),
            ("s2", Ballot::veto(Vec::<String>::new())),
        ]);
        let ids = types(&["a", "b"]);
        assert_eq!(
            portion_with_exclusion(&cardinal, &veto, &ids, 0.5).unwrap(),
            mean_portion(&cardinal, &ids).unwrap()
        );
    }

    #[test]
    fn portion_with_exclusion_renormalizes_on_admissible() {
        let cardinal = PreferenceProfile::new(vec![
            ("s1", Ballot::cardinal(vec![("a", 0.5), ("b", 0.25), ("c", 0.25)])),
            ("s2", Ballot::cardinal(vec![("a", 0.25), ("b", 0.5), ("c", 0.25)])),
        ]);
        let veto = PreferenceProfile::new(vec![
            ("s1", Ballot::veto(vec!["c"])),
            ("s2", Ballot::veto(vec!["c"])),
        ]);
        let d = portion_with_exclusion(&cardinal, &veto, &types(&["a", "b", "c"]), 0.5).unwrap();
        assert!((d.mass["a"] - 0.5).abs() < 1e-12);
        assert!((d.mass["b"] - 0.5).abs() < 1e-12);
        assert!(!d.mass.contains_key("c"));
    }

    #[test]
    fn own_veto_excluding_zero_mass_type() {
        let cardinal = PreferenceProfile::new(vec![(
            "s1",
            Ballot::cardinal(vec![("a", 0.6), ("b", 0.4), ("c", 0.0)]),
        )]);
        let veto = PreferenceProfile::new(vec![("s1", Ballot::veto(vec!["c"]))]);
        let d = portion_with_exclusion(&cardinal, &veto, &types(&["a", "b", "c"]), 0.5).unwrap();
        assert!((d.mass["a"] - 0.6).abs() < 1e-12);
        assert!((d.mass["b"] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn unanimous_ballots_are_reproduced_and_permutation_invariant() {
        use crate::prefs::permute;
        let p = PreferenceProfile::new(vec![
            ("s1", Ballot::cardinal(vec![("a", 0.1), ("b", 0.9)])),
            ("s2", Ballot::cardinal(vec![("a", 0.1), ("b", 0.9)])),
            ("s3", Ballot::cardinal(vec![("a", 0.1), ("b", 0.9)])),
        ]);
        let ids = types(&["a", "b"]);
        let d = mean_portion(&p, &ids).unwrap();
        assert!((d.mass["a"] - 0.1).abs() < 1e-12);

        let shuffled = permute(&p, &[1, 2, 0]).unwrap();
        assert_eq!(mean_portion(&shuffled, &ids).unwrap(), d);
    }
}
