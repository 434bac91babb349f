//! Sequential decision mechanisms and audits: a credit-carrying approval
//! rule that balances influence over rounds, plus group-proportionality
//! and individual-neglect audits over decision logs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prefs::{Ballot, Instance, PreferenceProfile};

/// A time-ordered record of (instance, chosen outcome) pairs with a stable
/// stakeholder roster. Stakeholders may abstain in a round by having no
/// ballot there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionLog {
    pub roster: Vec<String>,
    pub rounds: Vec<LogRound>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogRound {
    pub instance: Instance,
    pub chosen: String,
}

impl DecisionLog {
    pub fn validate(&self) -> Result<()> {
        let roster: BTreeSet<&str> = self.roster.iter().map(String::as_str).collect();
        for (idx, round) in self.rounds.iter().enumerate() {
            if !round.instance.has_outcome(&round.chosen) {
                return Err(Error::validation(format!(
                    "round {idx}: chosen outcome {} not in outcome set",
                    round.chosen
                )));
            }
            for s in &round.instance.profile.stakeholders {
                if !roster.contains(s.as_str()) {
                    return Err(Error::validation(format!(
                        "round {idx}: stakeholder {s} not in roster"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Per-round credit weights, starting at 1.0 for everyone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightTrace {
    /// weights[r] holds the credit state entering round r.
    pub rounds: Vec<BTreeMap<String, f64>>,
}

/// A stakeholder group whose share of decisions is audited.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "group-id")]
    pub group_id: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupAuditEntry {
    #[serde(rename = "group-id")]
    pub group_id: String,
    #[serde(rename = "satisfaction-rate")]
    pub satisfaction_rate: f64,
    /// The group's weight share of the roster; the proportionality target.
    #[serde(rename = "required-share")]
    pub required_share: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeglectSpan {
    /// First and last round index of the span, inclusive.
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeglectEntry {
    #[serde(rename = "stakeholder-id")]
    pub stakeholder_id: String,
    pub spans: Vec<NeglectSpan>,
}

fn approval_set<'a>(ballot: &'a Ballot, stakeholder: &str) -> Result<&'a BTreeSet<String>> {
    match ballot {
        Ballot::Approval { approved } => Ok(approved),
        other => Err(Error::validation(format!(
            "stakeholder {stakeholder}: expected approval ballot, got {}",
            other.kind_name()
        ))),
    }
}

/// Runs the credit rule over a sequence of approval profiles.
///
/// Weights start at 1; each round the outcome maximizing the credit-weighted
/// approval count wins (lexicographic ties). Satisfied stakeholders reset
/// to 1, unsatisfied ones gain +1, abstainers keep their weight. A
/// stakeholder's weight is therefore 1 + rounds since last satisfied.
pub fn run_credit_sequence(
    roster: &[String],
    rounds: &[Instance],
) -> Result<(DecisionLog, WeightTrace)> {
    if rounds.is_empty() {
        return Err(Error::validation("empty round sequence"));
    }
    let roster_set: BTreeSet<&str> = roster.iter().map(String::as_str).collect();
    let mut credit: BTreeMap<String, f64> = roster.iter().map(|s| (s.clone(), 1.0)).collect();
    let mut trace = Vec::new();
    let mut log_rounds = Vec::new();

    for (idx, instance) in rounds.iter().enumerate() {
        if instance.outcomes.is_empty() {
            return Err(Error::validation(format!("round {idx}: empty outcome set")));
        }
        for s in &instance.profile.stakeholders {
            if !roster_set.contains(s.as_str()) {
                return Err(Error::validation(format!(
                    "round {idx}: stakeholder {s} not in roster"
                )));
            }
        }
        trace.push(credit.clone());

        let mut best: Option<(&str, f64)> = None;
        for outcome in &instance.outcomes {
            let mut support = 0.0;
            for s in &instance.profile.stakeholders {
                let approved = approval_set(instance.profile.ballot(s)?, s)?;
                if approved.contains(&outcome.id) {
                    support += credit[s];
                }
            }
            best = match best {
                None => Some((&outcome.id, support)),
                Some((bc, bs)) if support > bs || (support == bs && outcome.id.as_str() < bc) => {
                    Some((&outcome.id, support))
                }
                keep => keep,
            };
        }
        let chosen = best.unwrap().0.to_string();

        for s in &instance.profile.stakeholders {
            let approved = approval_set(instance.profile.ballot(s)?, s)?;
            let w = credit.get_mut(s).unwrap();
            if approved.contains(&chosen) {
                *w = 1.0;
            } else {
                *w += 1.0;
            }
        }
        log_rounds.push(LogRound {
            instance: instance.clone(),
            chosen,
        });
    }

    Ok((
        DecisionLog {
            roster: roster.to_vec(),
            rounds: log_rounds,
        },
        WeightTrace { rounds: trace },
    ))
}

/// Is this stakeholder satisfied with the chosen outcome in this round?
///
/// Approval: chosen is approved. Veto: chosen is not vetoed. Cardinal:
/// utility of chosen strictly exceeds the stakeholder's mean utility over
/// the round's outcomes. Ranking ballots are not supported here.
fn satisfied(
    profile: &PreferenceProfile,
    stakeholder: &str,
    instance: &Instance,
    chosen: &str,
) -> Result<bool> {
    match profile.ballot(stakeholder)? {
        Ballot::Approval { approved } => Ok(approved.contains(chosen)),
        Ballot::Veto { vetoed } => Ok(!vetoed.contains(chosen)),
        Ballot::Cardinal { utilities } => {
            let mut sum = 0.0;
            let mut count = 0usize;
            for o in &instance.outcomes {
                if let Some(u) = utilities.get(&o.id) {
                    sum += u;
                    count += 1;
                }
            }
            if count == 0 {
                return Ok(false);
            }
            let mean = sum / count as f64;
            Ok(utilities.get(chosen).is_some_and(|u| *u > mean))
        }
        Ballot::Ranking { .. } => Err(Error::validation(format!(
            "stakeholder {stakeholder}: ranking ballots are not supported in temporal audits"
        ))),
    }
}

/// Could any admissible outcome this round have satisfied the stakeholder?
fn eligible(
    profile: &PreferenceProfile,
    stakeholder: &str,
    instance: &Instance,
) -> Result<bool> {
    for o in &instance.outcomes {
        if satisfied(profile, stakeholder, instance, &o.id)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks each group's satisfaction rate against its proportional share.
///
/// A group is satisfied in a round when members holding at least half the
/// group's ballot weight are satisfied with the chosen outcome. The group
/// violates proportionality when rate < share·(1−slack).
pub fn group_proportionality_audit(
    log: &DecisionLog,
    groups: &[GroupSpec],
    slack: f64,
) -> Result<Vec<GroupAuditEntry>> {
    if !(0.0..1.0).contains(&slack) {
        return Err(Error::validation(format!("slack must lie in [0,1), got {slack}")));
    }
    log.validate()?;
    if log.rounds.is_empty() {
        return Err(Error::validation("empty decision log"));
    }
    let roster: BTreeSet<&str> = log.roster.iter().map(String::as_str).collect();

    let mut entries = Vec::new();
    for group in groups {
        for member in &group.members {
            if !roster.contains(member.as_str()) {
                return Err(Error::validation(format!(
                    "group {}: member {member} not in roster",
                    group.group_id
                )));
            }
        }
        // share from ballot weights, averaged over rounds where the group participates
        let mut share_sum = 0.0;
        let mut share_rounds = 0usize;
        let mut satisfied_rounds = 0usize;
        for round in &log.rounds {
            let profile = &round.instance.profile;
            let members_present: Vec<&String> = group
                .members
                .iter()
                .filter(|m| profile.ballots.contains_key(*m))
                .collect();
            let group_weight: f64 = members_present.iter().map(|m| profile.weight(m)).sum();
            let total_weight = profile.total_weight();
            if group_weight <= 0.0 || total_weight <= 0.0 {
                continue;
            }
            share_sum += group_weight / total_weight;
            share_rounds += 1;
            let mut happy_weight = 0.0;
            for m in &members_present {
                if satisfied(profile, m, &round.instance, &round.chosen)? {
                    happy_weight += profile.weight(m);
                }
            }
            if happy_weight >= group_weight / 2.0 {
                satisfied_rounds += 1;
            }
        }
        if share_rounds == 0 {
            return Err(Error::validation(format!(
                "group {} has zero weight in every round",
                group.group_id
            )));
        }
        let required_share = share_sum / share_rounds as f64;
        let rate = satisfied_rounds as f64 / log.rounds.len() as f64;
        entries.push(GroupAuditEntry {
            group_id: group.group_id.clone(),
            satisfaction_rate: rate,
            required_share,
            violated: rate < required_share * (1.0 - slack),
        });
    }
    entries.sort_by(|a, b| a.group_id.cmp(&b.group_id));
    Ok(entries)
}

/// Flags maximal runs of at least `window` consecutive eligible-but-unsatisfied
/// rounds per stakeholder. Rounds without an eligible outcome neither break
/// nor extend a run.
pub fn individual_neglect_audit(log: &DecisionLog, window: usize) -> Result<Vec<NeglectEntry>> {
    if window == 0 {
        return Err(Error::validation("window must be at least 1"));
    }
    log.validate()?;

    let mut entries = Vec::new();
    for stakeholder in &log.roster {
        let mut spans = Vec::new();
        let mut run: Option<(usize, usize, usize)> = None; // (start, end, len)
        for (idx, round) in log.rounds.iter().enumerate() {
            let profile = &round.instance.profile;
            if !profile.ballots.contains_key(stakeholder) {
                continue; // abstained
            }
            if !eligible(profile, stakeholder, &round.instance)? {
                continue; // skipped round: run neither breaks nor extends
            }
            if satisfied(profile, stakeholder, &round.instance, &round.chosen)? {
                if let Some((start, end, len)) = run.take() {
                    if len >= window {
                        spans.push(NeglectSpan { start, end });
                    }
                }
            } else {
                run = Some(match run {
                    None => (idx, idx, 1),
                    Some((start, _, len)) => (start, idx, len + 1),
                });
            }
        }
        if let Some((start, end, len)) = run {
            if len >= window {
                spans.push(NeglectSpan { start, end });
            }
        }
        if !spans.is_empty() {
            entries.push(NeglectEntry {
                stakeholder_id: stakeholder.clone(),
                spans,
            });
        }
    }
    entries.sort_by(|a, b| a.stakeholder_id.cmp(&b.stakeholder_id));
    Ok(entries)
}
