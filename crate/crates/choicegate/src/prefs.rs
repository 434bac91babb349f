//! Data model for stakeholders, ballots, outcomes and the derived pairwise
//! comparison relation used by every mechanism and audit in this crate.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A candidate outcome an AI system (or mechanism) may select.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outcome {
    pub id: String,
    /// Optional human-readable description for reports.
    pub payload: Option<String>,
}

impl Outcome {
    pub fn new(id: impl Into<String>) -> Self {
        Outcome {
            id: id.into(),
            payload: None,
        }
    }

    pub fn with_payload(id: impl Into<String>, payload: impl Into<String>) -> Self {
        Outcome {
            id: id.into(),
            payload: Some(payload.into()),
        }
    }
}

/// One stakeholder's stated preferences over an instance's outcome set.
///
/// Cardinal ballots may omit outcomes; an omitted outcome compares as
/// [`Comparison::Incomparable`] and is excluded from axiom counts involving
/// that stakeholder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Ballot {
    Cardinal { utilities: BTreeMap<String, f64> },
    Approval { approved: BTreeSet<String> },
    Ranking { ranking: Vec<String> },
    Veto { vetoed: BTreeSet<String> },
}

impl Ballot {
    pub fn cardinal<I, S>(utilities: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        Ballot::Cardinal {
            utilities: utilities.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    pub fn approval<I, S>(approved: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ballot::Approval {
            approved: approved.into_iter().map(Into::into).collect(),
        }
    }

    pub fn ranking<I, S>(order: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ballot::Ranking {
            ranking: order.into_iter().map(Into::into).collect(),
        }
    }

    pub fn veto<I, S>(vetoed: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ballot::Veto {
            vetoed: vetoed.into_iter().map(Into::into).collect(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Ballot::Cardinal { .. } => "cardinal",
            Ballot::Approval { .. } => "approval",
            Ballot::Ranking { .. } => "ranking",
            Ballot::Veto { .. } => "veto",
        }
    }
}

/// The profile (P_1, ..., P_n): one ballot per stakeholder, with optional
/// nonnegative weights (default 1.0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreferenceProfile {
    pub stakeholders: Vec<String>,
    pub weights: BTreeMap<String, f64>,
    pub ballots: BTreeMap<String, Ballot>,
}

impl PreferenceProfile {
    /// Builds a profile with unit weights in the given stakeholder order.
    pub fn new<I, S>(ballots: I) -> Self
    where
        I: IntoIterator<Item = (S, Ballot)>,
        S: Into<String>,
    {
        let mut stakeholders = Vec::new();
        let mut map = BTreeMap::new();
        let mut weights = BTreeMap::new();
        for (id, ballot) in ballots {
            let id = id.into();
            stakeholders.push(id.clone());
            weights.insert(id.clone(), 1.0);
            map.insert(id, ballot);
        }
        PreferenceProfile {
            stakeholders,
            weights,
            ballots: map,
        }
    }

    pub fn len(&self) -> usize {
        self.stakeholders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stakeholders.is_empty()
    }

    pub fn weight(&self, stakeholder: &str) -> f64 {
        self.weights.get(stakeholder).copied().unwrap_or(1.0)
    }

    pub fn total_weight(&self) -> f64 {
        self.stakeholders.iter().map(|s| self.weight(s)).sum()
    }

    pub fn ballot(&self, stakeholder: &str) -> Result<&Ballot> {
        self.ballots
            .get(stakeholder)
            .ok_or_else(|| Error::validation(format!("unknown stakeholder id: {stakeholder}")))
    }

    /// Profile with one stakeholder removed (for participation checks).
    pub fn without(&self, stakeholder: &str) -> PreferenceProfile {
        let mut out = self.clone();
        out.stakeholders.retain(|s| s != stakeholder);
        out.ballots.remove(stakeholder);
        out.weights.remove(stakeholder);
        out
    }
}

/// How a stakeholder compares two outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    StrictlyPrefers,
    Indifferent,
    StrictlyDispreferred,
    /// Only possible when a cardinal ballot omits one of the outcomes.
    Incomparable,
}

impl Comparison {
    pub fn flip(self) -> Comparison {
        match self {
            Comparison::StrictlyPrefers => Comparison::StrictlyDispreferred,
            Comparison::StrictlyDispreferred => Comparison::StrictlyPrefers,
            other => other,
        }
    }
}

/// An input X together with its admissible outcome set and the stakeholder
/// profile attached to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    #[serde(rename = "instance-id")]
    pub instance_id: String,
    pub input: String,
    pub outcomes: Vec<Outcome>,
    pub profile: PreferenceProfile,
}

impl Instance {
    pub fn outcome_ids(&self) -> Vec<&str> {
        self.outcomes.iter().map(|o| o.id.as_str()).collect()
    }

    pub fn has_outcome(&self, id: &str) -> bool {
        self.outcomes.iter().any(|o| o.id == id)
    }

    /// Validates the instance's own invariants plus its profile.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if self.instance_id.is_empty() {
            violations.push("instance: empty instance-id".to_string());
        }
        if self.outcomes.is_empty() {
            violations.push(format!("instance {}: no outcomes", self.instance_id));
        }
        let mut seen = BTreeSet::new();
        for o in &self.outcomes {
            if o.id.is_empty() {
                violations.push(format!("instance {}: empty outcome id", self.instance_id));
            }
            if !seen.insert(o.id.as_str()) {
                violations.push(format!(
                    "instance {}: duplicate outcome id {}",
                    self.instance_id, o.id
                ));
            }
        }
        violations.extend(validate_profile(&self.profile, &self.outcomes));
        violations
    }
}

/// A collection of instances the audit runs over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditSuite {
    #[serde(rename = "suite-id")]
    pub suite_id: String,
    pub instances: Vec<Instance>,
}

impl AuditSuite {
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if self.instances.is_empty() {
            violations.push("suite: no instances".to_string());
        }
        let mut seen = BTreeSet::new();
        for inst in &self.instances {
            if !seen.insert(inst.instance_id.as_str()) {
                violations.push(format!("suite: duplicate instance-id {}", inst.instance_id));
            }
            violations.extend(inst.validate());
        }
        violations
    }
}

/// Checks every profile invariant against an outcome set. Returns every
/// violation found, sorted by stakeholder id then message; an empty list
/// means the profile is valid. Validation never aborts.
pub fn validate_profile(profile: &PreferenceProfile, outcomes: &[Outcome]) -> Vec<String> {
    let ids: BTreeSet<&str> = outcomes.iter().map(|o| o.id.as_str()).collect();
    let mut violations: Vec<(String, String)> = Vec::new();
    let mut record = |stakeholder: &str, msg: String| {
        violations.push((stakeholder.to_string(), msg));
    };

    if profile.stakeholders.is_empty() {
        record("", "profile has no stakeholders".to_string());
    }
    let roster: BTreeSet<&str> = profile.stakeholders.iter().map(String::as_str).collect();
    if roster.len() != profile.stakeholders.len() {
        record("", "duplicate stakeholder ids in roster".to_string());
    }
    for s in &profile.stakeholders {
        if !profile.ballots.contains_key(s) {
            record(s, format!("stakeholder {s} has no ballot"));
        }
    }
    for s in profile.ballots.keys() {
        if !roster.contains(s.as_str()) {
            record(s, format!("ballot for unknown stakeholder {s}"));
        }
    }
    for (s, w) in &profile.weights {
        if !roster.contains(s.as_str()) {
            record(s, format!("weight for unknown stakeholder {s}"));
        }
        if !w.is_finite() || *w < 0.0 {
            record(s, format!("stakeholder {s} has negative or non-finite weight {w}"));
        }
    }
    for (s, ballot) in &profile.ballots {
        match ballot {
            Ballot::Cardinal { utilities } => {
                for (id, u) in utilities {
                    if !ids.contains(id.as_str()) {
                        record(s, format!("stakeholder {s}: cardinal entry for unknown outcome {id}"));
                    }
                    if !u.is_finite() {
                        record(s, format!("stakeholder {s}: non-finite utility for {id}"));
                    }
                }
            }
            Ballot::Approval { approved } => {
                for id in approved {
                    if !ids.contains(id.as_str()) {
                        record(s, format!("stakeholder {s}: approval of unknown outcome {id}"));
                    }
                }
            }
            Ballot::Ranking { ranking } => {
                let ranked: BTreeSet<&str> = ranking.iter().map(String::as_str).collect();
                if ranked.len() != ranking.len() {
                    record(s, format!("stakeholder {s}: ranking repeats an outcome id"));
                }
                for id in ranking {
                    if !ids.contains(id.as_str()) {
                        record(s, format!("stakeholder {s}: ranking contains unknown outcome {id}"));
                    }
                }
                for id in &ids {
                    if !ranked.contains(id) {
                        record(s, format!("stakeholder {s}: ranking is missing outcome {id}"));
                    }
                }
            }
            Ballot::Veto { vetoed } => {
                for id in vetoed {
                    if !ids.contains(id.as_str()) {
                        record(s, format!("stakeholder {s}: veto of unknown outcome {id}"));
                    }
                }
            }
        }
    }

    violations.sort();
    violations.into_iter().map(|(_, m)| m).collect()
}

/// Compares two outcomes from one stakeholder's perspective: the derived
/// pairwise relation behind every axiom check.
pub fn compare(
    profile: &PreferenceProfile,
    stakeholder: &str,
    y1: &str,
    y2: &str,
) -> Result<Comparison> {
    let ballot = profile.ballot(stakeholder)?;
    if y1 == y2 {
        return Ok(Comparison::Indifferent);
    }
    Ok(match ballot {
        Ballot::Cardinal { utilities } => match (utilities.get(y1), utilities.get(y2)) {
            (Some(u1), Some(u2)) => {
                if u1 > u2 {
                    Comparison::StrictlyPrefers
                } else if u1 < u2 {
                    Comparison::StrictlyDispreferred
                } else {
                    Comparison::Indifferent
                }
            }
            _ => Comparison::Incomparable,
        },
        Ballot::Approval { approved } => match (approved.contains(y1), approved.contains(y2)) {
            (true, false) => Comparison::StrictlyPrefers,
            (false, true) => Comparison::StrictlyDispreferred,
            _ => Comparison::Indifferent,
        },
        Ballot::Ranking { ranking } => {
            let p1 = ranking.iter().position(|id| id == y1);
            let p2 = ranking.iter().position(|id| id == y2);
            match (p1, p2) {
                (Some(p1), Some(p2)) if p1 < p2 => Comparison::StrictlyPrefers,
                (Some(_), Some(_)) => Comparison::StrictlyDispreferred,
                _ => {
                    return Err(Error::validation(format!(
                        "outcome {} not in ranking of stakeholder {stakeholder}",
                        if p1.is_none() { y1 } else { y2 }
                    )))
                }
            }
        }
        Ballot::Veto { vetoed } => match (vetoed.contains(y1), vetoed.contains(y2)) {
            (false, true) => Comparison::StrictlyPrefers,
            (true, false) => Comparison::StrictlyDispreferred,
            _ => Comparison::Indifferent,
        },
    })
}

/// Rescales a cardinal ballot onto the probability simplex, preserving
/// proportions. Requires nonnegative utilities, not all zero.
pub fn normalize_cardinal(ballot: &Ballot) -> Result<Ballot> {
    let utilities = match ballot {
        Ballot::Cardinal { utilities } => utilities,
        other => {
            return Err(Error::validation(format!(
                "normalize_cardinal requires a cardinal ballot, got {}",
                other.kind_name()
            )))
        }
    };
    let mut sum = 0.0;
    for (id, u) in utilities {
        if *u < 0.0 || !u.is_finite() {
            return Err(Error::validation(format!(
                "negative or non-finite utility {u} for outcome {id}"
            )));
        }
        sum += u;
    }
    if sum <= 0.0 {
        return Err(Error::validation("all-zero cardinal ballot"));
    }
    Ok(Ballot::Cardinal {
        utilities: utilities.iter().map(|(k, v)| (k.clone(), v / sum)).collect(),
    })
}

/// Reassigns ballots (and their weights) across stakeholder positions.
///
/// `permutation[new_pos] = old_pos`: the ballot previously held at
/// `old_pos` moves to `new_pos`. Stakeholder ids keep their original order,
/// so anonymity checks see the same roster with shuffled preferences.
pub fn permute(profile: &PreferenceProfile, permutation: &[usize]) -> Result<PreferenceProfile> {
    let n = profile.stakeholders.len();
    if permutation.len() != n {
        return Err(Error::validation(format!(
            "permutation length {} does not match {} stakeholders",
            permutation.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in permutation {
        if p >= n || seen[p] {
            return Err(Error::validation("permutation is not a bijection"));
        }
        seen[p] = true;
    }
    let mut ballots = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for (new_pos, &old_pos) in permutation.iter().enumerate() {
        let target = &profile.stakeholders[new_pos];
        let source = &profile.stakeholders[old_pos];
        ballots.insert(target.clone(), profile.ballot(source)?.clone());
        weights.insert(target.clone(), profile.weight(source));
    }
    Ok(PreferenceProfile {
        stakeholders: profile.stakeholders.clone(),
        weights,
        ballots,
    })
}
