//! Single-winner rules, median threshold selection, approval committees
//! (with an EJR checker), the proportional veto core and rank aggregation.
//! All tie-breaks are lexicographic on outcome id and recorded in the
//! result trace.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prefs::{Ballot, PreferenceProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingleWinnerRule {
    Plurality,
    Borda,
    Condorcet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommitteeRule {
    Av,
    SeqPav,
    PavExact,
}

/// Outcome of an election, single-winner or committee.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElectionResult {
    /// Winner(s); a singleton for single-winner rules. Empty only when a
    /// Condorcet winner does not exist.
    pub winners: Vec<String>,
    /// Per-candidate scores (pairwise wins for Condorcet).
    pub scores: BTreeMap<String, f64>,
    /// Candidates eliminated purely by lexicographic tie-break.
    #[serde(rename = "tie-break-trace")]
    pub tie_break_trace: Vec<String>,
    /// Set for Condorcet when no candidate beats all others.
    #[serde(rename = "none-exists")]
    pub none_exists: bool,
}

/// A collectively selected numerical threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdDecision {
    #[serde(rename = "metric-id")]
    pub metric_id: String,
    pub value: f64,
    pub mechanism: String,
    pub reports: Vec<f64>,
}

fn ranking_ballots(
    profile: &PreferenceProfile,
) -> Result<Vec<(&str, &[String], f64)>> {
    let mut out = Vec::new();
    for s in &profile.stakeholders {
        match profile.ballot(s)? {
            Ballot::Ranking { ranking } => out.push((s.as_str(), ranking.as_slice(), profile.weight(s))),
            other => {
                return Err(Error::validation(format!(
                    "stakeholder {s}: expected ranking ballot, got {}",
                    other.kind_name()
                )))
            }
        }
    }
    Ok(out)
}

fn approval_ballots(
    profile: &PreferenceProfile,
) -> Result<Vec<(&str, &BTreeSet<String>, f64)>> {
    let mut out = Vec::new();
    for s in &profile.stakeholders {
        match profile.ballot(s)? {
            Ballot::Approval { approved } => out.push((s.as_str(), approved, profile.weight(s))),
            other => {
                return Err(Error::validation(format!(
                    "stakeholder {s}: expected approval ballot, got {}",
                    other.kind_name()
                )))
            }
        }
    }
    Ok(out)
}

fn common_candidates(rankings: &[(&str, &[String], f64)]) -> Result<Vec<String>> {
    let first: BTreeSet<&str> = rankings
        .first()
        .ok_or_else(|| Error::validation("empty profile"))?
        .1
        .iter()
        .map(String::as_str)
        .collect();
    for (s, ranking, _) in rankings {
        let set: BTreeSet<&str> = ranking.iter().map(String::as_str).collect();
        if set != first {
            return Err(Error::validation(format!(
                "stakeholder {s}: ranking over a different candidate set"
            )));
        }
    }
    Ok(first.into_iter().map(String::from).collect())
}

/// Picks the max-score candidate; all other top scorers go into the trace.
fn argmax_lexicographic(scores: &BTreeMap<String, f64>) -> (String, Vec<String>) {
    let best = scores.values().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut top: Vec<&String> = scores
        .iter()
        .filter(|(_, v)| **v == best)
        .map(|(k, _)| k)
        .collect();
    top.sort();
    let winner = top[0].clone();
    let trace = top[1..].iter().map(|s| (*s).clone()).collect();
    (winner, trace)
}

/// Aggregates strict rankings into a single winner under the requested rule.
/// Condorcet returns `none_exists` instead of falling back to another rule.
pub fn single_winner(profile: &PreferenceProfile, rule: SingleWinnerRule) -> Result<ElectionResult> {
    let ballots = ranking_ballots(profile)?;
    let candidates = common_candidates(&ballots)?;
    let m = candidates.len();
    let mut scores: BTreeMap<String, f64> = candidates.iter().map(|c| (c.clone(), 0.0)).collect();
    match rule {
        SingleWinnerRule::Plurality => {
            for (_, ranking, w) in &ballots {
                *scores.get_mut(&ranking[0]).unwrap() += w;
            }
        }
        SingleWinnerRule::Borda => {
            for (_, ranking, w) in &ballots {
                for (pos, c) in ranking.iter().enumerate() {
                    *scores.get_mut(c).unwrap() += w * (m - 1 - pos) as f64;
                }
            }
        }
        SingleWinnerRule::Condorcet => {
            let mut winner = None;
            for c in &candidates {
                let mut wins = 0usize;
                for d in &candidates {
                    if c == d {
                        continue;
                    }
                    let mut margin = 0.0;
                    for (_, ranking, w) in &ballots {
                        let pc = ranking.iter().position(|x| x == c).unwrap();
                        let pd = ranking.iter().position(|x| x == d).unwrap();
                        margin += if pc < pd { *w } else { -w };
                    }
                    if margin > 0.0 {
                        wins += 1;
                    }
                }
                scores.insert(c.clone(), wins as f64);
                if wins == m - 1 {
                    winner = Some(c.clone());
                }
            }
            return Ok(ElectionResult {
                winners: winner.clone().into_iter().collect(),
                scores,
                tie_break_trace: Vec::new(),
                none_exists: winner.is_none(),
            });
        }
    }
    let (winner, trace) = argmax_lexicographic(&scores);
    Ok(ElectionResult {
        winners: vec![winner],
        scores,
        tie_break_trace: trace,
        none_exists: false,
    })
}

/// Weighted lower median: the smallest value v such that the total weight
/// of reports ≤ v reaches half of the total weight.
pub fn median_select(
    metric_id: &str,
    reports: &[f64],
    weights: &[f64],
) -> Result<ThresholdDecision> {
    if reports.is_empty() {
        return Err(Error::validation("empty reports"));
    }
    if reports.len() != weights.len() {
        return Err(Error::validation("reports and weights differ in length"));
    }
    if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
        return Err(Error::validation("weights must be nonnegative and finite"));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::validation("total weight must be positive"));
    }
    let mut pairs: Vec<(f64, f64)> = reports.iter().cloned().zip(weights.iter().cloned()).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut acc = 0.0;
    let mut value = pairs[pairs.len() - 1].0;
    for (v, w) in &pairs {
        acc += w;
        if acc >= total / 2.0 {
            value = *v;
            break;
        }
    }
    Ok(ThresholdDecision {
        metric_id: metric_id.to_string(),
        value,
        mechanism: "median".to_string(),
        reports: reports.to_vec(),
    })
}

/// PAV score of a committee: Σ_i w_i · H(|A_i ∩ W|).
pub fn pav_score(ballots: &[(&str, &BTreeSet<String>, f64)], committee: &[String]) -> f64 {
    let set: BTreeSet<&str> = committee.iter().map(String::as_str).collect();
    let mut total = 0.0;
    for (_, approved, w) in ballots {
        let sat = approved.iter().filter(|a| set.contains(a.as_str())).count();
        let mut h = 0.0;
        for j in 1..=sat {
            h += 1.0 / j as f64;
        }
        total += w * h;
    }
    total
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// Lexicographic successor among k-subsets of 0..m; false when exhausted.
fn next_combination(indices: &mut [usize], m: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] != i + m - k {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn candidate_pool(ballots: &[(&str, &BTreeSet<String>, f64)]) -> Vec<String> {
    let mut pool: BTreeSet<String> = BTreeSet::new();
    for (_, approved, _) in ballots {
        pool.extend(approved.iter().cloned());
    }
    pool.into_iter().collect()
}

/// Selects a committee of size k from approval ballots.
///
/// Candidates are taken from the union of approval sets unless an explicit
/// candidate list is supplied. Committee ties break lexicographically on
/// the sorted id tuple.
pub fn approval_committee(
    profile: &PreferenceProfile,
    candidates: Option<&[String]>,
    k: usize,
    rule: CommitteeRule,
) -> Result<ElectionResult> {
    let ballots = approval_ballots(profile)?;
    let pool: Vec<String> = match candidates {
        Some(c) => c.to_vec(),
        None => candidate_pool(&ballots),
    };
    let m = pool.len();
    if k == 0 {
        return Err(Error::validation("committee size k must be positive"));
    }
    if k > m {
        return Err(Error::validation(format!(
            "committee size {k} exceeds {m} candidates"
        )));
    }

    let mut scores: BTreeMap<String, f64> = pool.iter().map(|c| (c.clone(), 0.0)).collect();
    for (_, approved, w) in &ballots {
        for c in approved.iter() {
            if let Some(s) = scores.get_mut(c) {
                *s += w;
            }
        }
    }

    let mut trace = Vec::new();
    let winners: Vec<String> = match rule {
        CommitteeRule::Av => {
            // stable sort on (-score, id), take k
            let mut ranked: Vec<&String> = pool.iter().collect();
            ranked.sort_by(|a, b| {
                scores[*b]
                    .partial_cmp(&scores[*a])
                    .unwrap()
                    .then_with(|| a.cmp(b))
            });
            if m > k && scores[ranked[k - 1]] == scores[ranked[k]] {
                trace.push(ranked[k].clone());
            }
            let mut w: Vec<String> = ranked[..k].iter().map(|s| (*s).clone()).collect();
            w.sort();
            w
        }
        CommitteeRule::SeqPav => {
            let mut committee: Vec<String> = Vec::new();
            let mut sat: BTreeMap<&str, usize> = ballots.iter().map(|(s, _, _)| (*s, 0)).collect();
            for _ in 0..k {
                let mut gains: Vec<(&String, f64)> = Vec::new();
                for c in &pool {
                    if committee.contains(c) {
                        continue;
                    }
                    let mut gain = 0.0;
                    for (s, approved, w) in &ballots {
                        if approved.contains(c) {
                            gain += w / (sat[s] + 1) as f64;
                        }
                    }
                    gains.push((c, gain));
                }
                let best = gains.iter().map(|(_, g)| *g).fold(f64::NEG_INFINITY, f64::max);
                let mut tied: Vec<&String> =
                    gains.iter().filter(|(_, g)| *g == best).map(|(c, _)| *c).collect();
                tied.sort();
                let chosen = tied[0].clone();
                trace.extend(tied[1..].iter().map(|c| (*c).clone()));
                for (s, approved, _) in &ballots {
                    if approved.contains(&chosen) {
                        *sat.get_mut(s).unwrap() += 1;
                    }
                }
                committee.push(chosen);
            }
            committee.sort();
            committee
        }
        CommitteeRule::PavExact => {
            if binomial(m, k) > 1_000_000 {
                return Err(Error::validation(format!(
                    "pav-exact would enumerate C({m},{k}) committees; use seq-pav"
                )));
            }
            let mut sorted_pool = pool.clone();
            sorted_pool.sort();
            let mut best_score = f64::NEG_INFINITY;
            let mut tied: Vec<Vec<String>> = Vec::new();
            let mut indices: Vec<usize> = (0..k).collect();
            loop {
                let committee: Vec<String> =
                    indices.iter().map(|&i| sorted_pool[i].clone()).collect();
                let score = pav_score(&ballots, &committee);
                if score > best_score {
                    best_score = score;
                    tied = vec![committee];
                } else if score == best_score {
                    tied.push(committee);
                }
                if !next_combination(&mut indices, m) {
                    break;
                }
            }
            tied.sort();
            trace.extend(tied[1..].iter().map(|c| c.join("+")));
            tied.into_iter().next().unwrap()
        }
    };

    Ok(ElectionResult {
        winners,
        scores,
        tie_break_trace: trace,
        none_exists: false,
    })
}

/// A group witnessing an EJR violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EjrWitness {
    pub members: Vec<String>,
    pub cohesiveness: usize,
    #[serde(rename = "common-approved")]
    pub common_approved: Vec<String>,
}

/// Brute-force Extended Justified Representation check. Requires unit
/// weights; guarded to n ≤ 16 stakeholders and m ≤ 16 candidates.
pub fn ejr_satisfied(
    profile: &PreferenceProfile,
    committee: &[String],
) -> Result<(bool, Option<EjrWitness>)> {
    let ballots = approval_ballots(profile)?;
    let n = ballots.len();
    let k = committee.len();
    if k == 0 {
        return Err(Error::validation("empty committee"));
    }
    let pool = candidate_pool(&ballots);
    if n > 16 || pool.len() > 16 {
        return Err(Error::validation(
            "ejr check guarded to n <= 16, m <= 16; use sampling check",
        ));
    }
    for (s, _, w) in &ballots {
        if *w != 1.0 {
            return Err(Error::validation(format!(
                "ejr check requires unit weights, stakeholder {s} has weight {w}"
            )));
        }
    }
    let committee_set: BTreeSet<&str> = committee.iter().map(String::as_str).collect();
    let sat: Vec<usize> = ballots
        .iter()
        .map(|(_, approved, _)| {
            approved
                .iter()
                .filter(|a| committee_set.contains(a.as_str()))
                .count()
        })
        .collect();

    for ell in 1..=k {
        for mask in 1u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            // ℓ-cohesive needs size ≥ ℓ·n/k
            if size * k < ell * n {
                continue;
            }
            let mut common: Option<BTreeSet<&str>> = None;
            for (i, ballot) in ballots.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let approved: BTreeSet<&str> = ballot.1.iter().map(String::as_str).collect();
                common = Some(match common {
                    None => approved,
                    Some(c) => c.intersection(&approved).cloned().collect(),
                });
            }
            let common = common.unwrap();
            if common.len() < ell {
                continue;
            }
            let ok = (0..n).any(|i| mask & (1 << i) != 0 && sat[i] >= ell);
            if !ok {
                let members: Vec<String> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| ballots[i].0.to_string())
                    .collect();
                return Ok((
                    false,
                    Some(EjrWitness {
                        members,
                        cohesiveness: ell,
                        common_approved: common.into_iter().map(String::from).collect(),
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

/// Proportional veto core over strict rankings: a candidate is blocked if
/// some coalition S can point at a common bottom set B containing it with
/// |B| ≤ ⌈m·|S|/n⌉ − 1. Returns all unblocked candidates; never empty.
/// Exhaustive, guarded to n, m ≤ 10.
pub fn veto_core(profile: &PreferenceProfile) -> Result<Vec<String>> {
    let ballots = ranking_ballots(profile)?;
    let candidates = common_candidates(&ballots)?;
    let n = ballots.len();
    let m = candidates.len();
    if n > 10 || m > 10 {
        return Err(Error::validation("veto core guarded to n, m <= 10"));
    }

    let mut blocked: BTreeSet<String> = BTreeSet::new();
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        // capacity ⌈m·s/n⌉ − 1
        let capacity = (m * size).div_ceil(n);
        let capacity = capacity.saturating_sub(1);
        for b in 1..=capacity.min(m.saturating_sub(1)) {
            // common bottom-b set across the coalition, if any
            let mut common: Option<BTreeSet<&str>> = None;
            let mut consistent = true;
            for (i, ballot) in ballots.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let ranking = ballot.1;
                let bottom: BTreeSet<&str> =
                    ranking[ranking.len() - b..].iter().map(String::as_str).collect();
                match &common {
                    None => common = Some(bottom),
                    Some(c) => {
                        if *c != bottom {
                            consistent = false;
                            break;
                        }
                    }
                }
            }
            if consistent {
                if let Some(bottom) = common {
                    for c in bottom {
                        blocked.insert(c.to_string());
                    }
                }
            }
        }
    }
    let core: Vec<String> = candidates.into_iter().filter(|c| !blocked.contains(c)).collect();
    assert!(!core.is_empty(), "proportional veto core must be non-empty");
    Ok(core)
}

/// Borda aggregation of weighted rankings into a single consensus ranking,
/// ties broken lexicographically.
pub fn aggregate_rankings(rankings: &[Vec<String>], weights: &[f64]) -> Result<Vec<String>> {
    if rankings.is_empty() {
        return Err(Error::validation("no rankings to aggregate"));
    }
    if rankings.len() != weights.len() {
        return Err(Error::validation("rankings and weights differ in length"));
    }
    let ids: BTreeSet<&str> = rankings[0].iter().map(String::as_str).collect();
    if ids.len() != rankings[0].len() {
        return Err(Error::validation("ranking repeats an id"));
    }
    for r in rankings {
        let set: BTreeSet<&str> = r.iter().map(String::as_str).collect();
        if set != ids {
            return Err(Error::validation("rankings cover different id sets"));
        }
    }
    let m = ids.len();
    let mut scores: BTreeMap<&str, f64> = ids.iter().map(|id| (*id, 0.0)).collect();
    for (r, w) in rankings.iter().zip(weights) {
        for (pos, id) in r.iter().enumerate() {
            *scores.get_mut(id.as_str()).unwrap() += w * (m - 1 - pos) as f64;
        }
    }
    let mut ordered: Vec<&str> = ids.into_iter().collect();
    ordered.sort_by(|a, b| scores[b].partial_cmp(&scores[a]).unwrap().then_with(|| a.cmp(b)));
    Ok(ordered.into_iter().map(String::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranking_profile(rankings: &[&[&str]]) -> PreferenceProfile {
        PreferenceProfile::new(rankings.iter().enumerate().map(|(i, r)| {
            (
                format!("s{}", i + 1),
                Ballot::ranking(r.iter().map(|s| s.to_string())),
            )
        }))
    }

    fn approval_profile(sets: &[&[&str]]) -> PreferenceProfile {
        PreferenceProfile::new(sets.iter().enumerate().map(|(i, a)| {
            (
                format!("s{}", i + 1),
                Ballot::approval(a.iter().map(|s| s.to_string())),
            )
        }))
    }

    #[test]
    fn borda_hand_tally() {
        let p = ranking_profile(&[&["a", "b", "c"], &["a", "c", "b"], &["b", "c", "a"]]);
        let r = single_winner(&p, SingleWinnerRule::Borda).unwrap();
        assert_eq!(r.winners, vec!["a".to_string()]);
        assert_eq!(r.scores["a"], 4.0);
        assert_eq!(r.scores["b"], 3.0);
        assert_eq!(r.scores["c"], 2.0);
    }

    #[test]
    fn unanimous_ranking_wins_under_every_rule() {
        let p = ranking_profile(&[&["a", "b", "c"], &["a", "b", "c"]]);
        for rule in [
            SingleWinnerRule::Plurality,
            SingleWinnerRule::Borda,
            SingleWinnerRule::Condorcet,
        ] {
            let r = single_winner(&p, rule).unwrap();
            assert_eq!(r.winners, vec!["a".to_string()]);
        }
    }

    #[test]
    fn condorcet_cycle_reports_none_exists() {
        let p = ranking_profile(&[&["a", "b", "c"], &["b", "c", "a"], &["c", "a", "b"]]);
        let r = single_winner(&p, SingleWinnerRule::Condorcet).unwrap();
        assert!(r.none_exists);
        assert!(r.winners.is_empty());
    }

    #[test]
    fn condorcet_winner_beats_everyone_pairwise() {
        let p = ranking_profile(&[&["b", "a", "c"], &["b", "c", "a"], &["a", "b", "c"]]);
        let r = single_winner(&p, SingleWinnerRule::Condorcet).unwrap();
        assert_eq!(r.winners, vec!["b".to_string()]);
        assert_eq!(r.scores["b"], 2.0);
    }

    #[test]
    fn mixed_ballot_kinds_rejected() {
        let p = PreferenceProfile::new(vec![
            ("s1", Ballot::ranking(vec!["a", "b"])),
            ("s2", Ballot::approval(vec!["a"])),
        ]);
        assert!(single_winner(&p, SingleWinnerRule::Borda).is_err());
    }

    #[test]
    fn median_examples() {
        let d = median_select("m", &[3.0, 7.0, 10.0], &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(d.value, 7.0);
        let d = median_select("m", &[5.5], &[1.0]).unwrap();
        assert_eq!(d.value, 5.5);
        // lower median convention on even counts
        let d = median_select("m", &[0.0, 100.0], &[1.0, 1.0]).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(median_select("m", &[], &[]).is_err());
    }

    #[test]
    fn weighted_median_respects_weights() {
        let d = median_select("m", &[1.0, 2.0, 3.0], &[5.0, 1.0, 1.0]).unwrap();
        assert_eq!(d.value, 1.0);
    }

    #[test]
    fn pav_exact_hand_example() {
        let p = approval_profile(&[&["a", "b"], &["a"], &["c"]]);
        let r = approval_committee(&p, None, 2, CommitteeRule::PavExact).unwrap();
        assert_eq!(r.winners, vec!["a".to_string(), "c".to_string()]);
    }

    #[test]
    fn unanimous_singleton_approvals() {
        let p = approval_profile(&[&["a"], &["a"], &["a"]]);
        for rule in [CommitteeRule::Av, CommitteeRule::SeqPav, CommitteeRule::PavExact] {
            let r = approval_committee(&p, None, 1, rule).unwrap();
            assert_eq!(r.winners, vec!["a".to_string()]);
        }
    }

    #[test]
    fn k_equals_m_selects_everyone() {
        let p = approval_profile(&[&["a"], &["b"], &["c"], &["d"]]);
        let r = approval_committee(&p, None, 4, CommitteeRule::SeqPav).unwrap();
        assert_eq!(
            r.winners,
            vec!["a".to_string(), "b".to_string(), "c".to_string(), "d".to_string()]
        );
    }

    #[test]
    fn k_larger_than_m_is_an_error() {
        let p = approval_profile(&[&["a"], &["b"]]);
        assert!(approval_committee(&p, None, 3, CommitteeRule::Av).is_err());
    }

    #[test]
    fn ejr_examples() {
        let p = approval_profile(&[&["a"], &["a"], &["b"], &["b"]]);
        let (ok, _) = ejr_satisfied(&p, &["a".to_string(), "b".to_string()]).unwrap();
        assert!(ok);

        let (ok, witness) = ejr_satisfied(&p, &["a".to_string(), "c".to_string()]).unwrap();
        assert!(!ok);
        let w = witness.unwrap();
        assert_eq!(w.members, vec!["s3".to_string(), "s4".to_string()]);
        assert_eq!(w.cohesiveness, 1);
        assert_eq!(w.common_approved, vec!["b".to_string()]);
    }

    #[test]
    fn ejr_unanimous_singleton() {
        let p = approval_profile(&[&["a"], &["a"], &["a"]]);
        let r = approval_committee(&p, None, 1, CommitteeRule::Av).unwrap();
        let (ok, _) = ejr_satisfied(&p, &r.winners).unwrap();
        assert!(ok);
    }

    #[test]
    fn veto_core_examples() {
        // unanimous a>b>c with n=3: grand coalition vetoes {b,c}
        let p = ranking_profile(&[&["a", "b", "c"], &["a", "b", "c"], &["a", "b", "c"]]);
        assert_eq!(veto_core(&p).unwrap(), vec!["a".to_string()]);

        // single voter a>b: capacity 1 vetoes b
        let p = ranking_profile(&[&["a", "b"]]);
        assert_eq!(veto_core(&p).unwrap(), vec!["a".to_string()]);

        // two opposed voters: singleton capacity 0, grand coalition bottom sets differ
        let p = ranking_profile(&[&["a", "b"], &["b", "a"]]);
        assert_eq!(veto_core(&p).unwrap(), vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn aggregate_rankings_examples() {
        let single = vec![vec!["b".to_string(), "a".to_string()]];
        assert_eq!(
            aggregate_rankings(&single, &[1.0]).unwrap(),
            vec!["b".to_string(), "a".to_string()]
        );

        let reversed = vec![
            vec!["a".to_string(), "b".to_string()],
            vec!["b".to_string(), "a".to_string()],
        ];
        assert_eq!(
            aggregate_rankings(&reversed, &[1.0, 1.0]).unwrap(),
            vec!["a".to_string(), "b".to_string()]
        );

        let weighted = vec![
            vec!["a".to_string(), "b".to_string(), "c".to_string()],
            vec!["c".to_string(), "b".to_string(), "a".to_string()],
        ];
        assert_eq!(
            aggregate_rankings(&weighted, &[2.0, 1.0]).unwrap(),
            vec!["a".to_string(), "b".to_string(), "c".to_string()]
        );
    }

    #[test]
    fn aggregate_rankings_rejects_mismatched_ids() {
        let bad = vec![
            vec!["a".to_string(), "b".to_string()],
            vec!["a".to_string(), "c".to_string()],
        ];
        assert!(aggregate_rankings(&bad, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn borda_and_plurality_are_anonymous() {
        use crate::prefs::permute;
        let p = ranking_profile(&[&["a", "b", "c"], &["b", "a", "c"], &["c", "b", "a"]]);
        let permuted = permute(&p, &[2, 0, 1]).unwrap();
        for rule in [SingleWinnerRule::Plurality, SingleWinnerRule::Borda] {
            assert_eq!(
                single_winner(&p, rule).unwrap().winners,
                single_winner(&permuted, rule).unwrap().winners
            );
        }
    }
}
