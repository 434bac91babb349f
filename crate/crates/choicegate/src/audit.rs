//! Quantitative axiom scoring of a black-box social choice function:
//! participation, Pareto efficiency, unanimity, majority and anonymity,
//! each turned into a satisfaction rate over a test suite with violation
//! witnesses.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prefs::{compare, permute, AuditSuite, Comparison, Instance, PreferenceProfile};

/// The black-box system under audit.
///
/// `evaluate` must return an id from the instance's outcome list and be
/// deterministic given `(instance, profile, seed)`. Passing `None` as the
/// profile asks for the no-input baseline `f(X)`; adapters that cannot
/// answer it report `supports_empty_profile() == false`.
pub trait ScfAdapter {
    fn label(&self) -> &str;

    fn supports_empty_profile(&self) -> bool {
        false
    }

    fn evaluate(
        &self,
        instance: &Instance,
        profile: Option<&PreferenceProfile>,
        seed: u64,
    ) -> Result<String>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Participation,
    Pareto,
    Unanimity,
    Majority,
    Anonymity,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Participation,
        Axiom::Pareto,
        Axiom::Unanimity,
        Axiom::Majority,
        Axiom::Anonymity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Participation => "participation",
            Axiom::Pareto => "pareto",
            Axiom::Unanimity => "unanimity",
            Axiom::Majority => "majority",
            Axiom::Anonymity => "anonymity",
        }
    }

    pub fn parse(name: &str) -> Result<Axiom> {
        match name {
            "participation" => Ok(Axiom::Participation),
            "pareto" => Ok(Axiom::Pareto),
            "unanimity" => Ok(Axiom::Unanimity),
            "majority" => Ok(Axiom::Majority),
            "anonymity" => Ok(Axiom::Anonymity),
            other => Err(Error::validation(format!("unsupported axiom name: {other}"))),
        }
    }
}

/// How alternative outcomes are chosen for dominance axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Fix the system output and sample alternatives uniformly without
    /// replacement from the remaining outcome set.
    SampleAlternatives,
    /// Compare the system output against the no-input baseline `f(X)`.
    NoInputBaseline,
}

/// A recorded axiom violation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "instance-id")]
    pub instance_id: String,
    pub stakeholders: Vec<String>,
    /// The dominating outcome (preferred) and the outcome actually at fault.
    pub outcomes: (String, String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomScore {
    pub axiom: Axiom,
    /// Conditions actually evaluated (satisfied + violated).
    pub checks: u64,
    pub satisfied: u64,
    /// Conditions skipped because a required comparison was incomparable
    /// or an instance failed the operation's precondition.
    pub skipped: u64,
    pub score: f64,
    pub witnesses: Vec<Witness>,
    pub warnings: Vec<String>,
}

impl AxiomScore {
    fn finish(axiom: Axiom, tally: Tally) -> AxiomScore {
        let mut witnesses = tally.witnesses;
        witnesses.sort();
        let checks = tally.satisfied + witnesses.len() as u64;
        let score = if checks == 0 {
            1.0
        } else {
            tally.satisfied as f64 / checks as f64
        };
        AxiomScore {
            axiom,
            checks,
            satisfied: tally.satisfied,
            skipped: tally.skipped,
            score,
            witnesses,
            warnings: tally.warnings,
        }
    }
}

#[derive(Default)]
struct Tally {
    satisfied: u64,
    skipped: u64,
    witnesses: Vec<Witness>,
    warnings: Vec<String>,
}

/// Audit configuration; echoed verbatim into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub axioms: Vec<Axiom>,
    pub strategy: Strategy,
    #[serde(rename = "samples-per-instance")]
    pub samples_per_instance: usize,
    #[serde(rename = "permutations-per-instance")]
    pub permutations_per_instance: usize,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            axioms: Axiom::ALL.to_vec(),
            strategy: Strategy::SampleAlternatives,
            samples_per_instance: 8,
            permutations_per_instance: 8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    #[serde(rename = "suite-id")]
    pub suite_id: String,
    pub system: String,
    #[serde(rename = "tool-version")]
    pub tool_version: String,
    pub config: AuditConfig,
    pub scores: Vec<AxiomScore>,
}

/// Stable per-instance sub-seed so results do not depend on suite order
/// or execution schedule.
fn mix_seed(seed: u64, tag: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325 ^ seed.wrapping_mul(0x100000001b3);
    for b in tag.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub(crate) fn instance_rng(seed: u64, instance_id: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(seed, instance_id))
}

/// Participation check: for every (instance, stakeholder) pair the outcome
/// without that stakeholder's ballot must not be strictly preferred by them
/// over the outcome with it.
pub fn participation_score(
    system: &dyn ScfAdapter,
    suite: &AuditSuite,
    seed: u64,
) -> Result<AxiomScore> {
    let mut tally = Tally::default();
    for instance in &suite.instances {
        if instance.profile.len() < 2 {
            tally.skipped += 1;
            tally.warnings.push(format!(
                "instance {}: only one stakeholder, participation check skipped",
                instance.instance_id
            ));
            continue;
        }
        let with = system.evaluate(instance, Some(&instance.profile), seed)?;
        for stakeholder in instance.profile.stakeholders.clone() {
            let reduced = instance.profile.without(&stakeholder);
            let without = system.evaluate(instance, Some(&reduced), seed)?;
            match compare(&instance.profile, &stakeholder, &without, &with)? {
                Comparison::StrictlyDispreferred | Comparison::Indifferent => tally.satisfied += 1,
                Comparison::StrictlyPrefers => tally.witnesses.push(Witness {
                    instance_id: instance.instance_id.clone(),
                    stakeholders: vec![stakeholder.clone()],
                    outcomes: (without.clone(), with.clone()),
                }),
                Comparison::Incomparable => tally.skipped += 1,
            }
        }
    }
    Ok(AxiomScore::finish(Axiom::Participation, tally))
}

/// Does `y1` dominate `y2` under `axiom` for this profile?
///
/// Returns `None` when a required comparison is incomparable, in which
/// case the whole check is skipped.
fn dominates(
    profile: &PreferenceProfile,
    y1: &str,
    y2: &str,
    axiom: Axiom,
) -> Result<Option<bool>> {
    let mut strict_weight = 0.0;
    let mut any_strict = false;
    let mut all_weak = true;
    let mut all_strict = true;
    for s in &profile.stakeholders {
        match compare(profile, s, y1, y2)? {
            Comparison::StrictlyPrefers => {
                any_strict = true;
                strict_weight += profile.weight(s);
            }
            Comparison::Indifferent => {
                all_strict = false;
            }
            Comparison::StrictlyDispreferred => {
                all_strict = false;
                all_weak = false;
            }
            Comparison::Incomparable => return Ok(None),
        }
    }
    Ok(Some(match axiom {
        Axiom::Pareto => all_weak && any_strict,
        Axiom::Unanimity => all_strict && !profile.stakeholders.is_empty(),
        Axiom::Majority => strict_weight > profile.total_weight() / 2.0,
        other => {
            return Err(Error::mechanism(format!(
                "{} is not a dominance axiom",
                other.name()
            )))
        }
    }))
}

fn strict_supporters(profile: &PreferenceProfile, y1: &str, y2: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for s in &profile.stakeholders {
        if compare(profile, s, y1, y2)? == Comparison::StrictlyPrefers {
            out.push(s.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Counts violations of Pareto efficiency, unanimity or the majority
/// criterion under the chosen alternative-generation strategy.
pub fn dominance_violations(
    system: &dyn ScfAdapter,
    suite: &AuditSuite,
    axiom: Axiom,
    strategy: Strategy,
    samples_per_instance: usize,
    seed: u64,
) -> Result<AxiomScore> {
    if !matches!(axiom, Axiom::Pareto | Axiom::Unanimity | Axiom::Majority) {
        return Err(Error::validation(format!(
            "{} is not a dominance axiom",
            axiom.name()
        )));
    }
    if samples_per_instance == 0 {
        return Err(Error::validation("samples-per-instance must be positive"));
    }
    if strategy == Strategy::NoInputBaseline && !system.supports_empty_profile() {
        return Err(Error::validation(format!(
            "system {} does not support the no-input baseline",
            system.label()
        )));
    }

    let mut tally = Tally::default();
    for instance in &suite.instances {
        match strategy {
            Strategy::SampleAlternatives => {
                let chosen = system.evaluate(instance, Some(&instance.profile), seed)?;
                let mut alternatives: Vec<String> = instance
                    .outcomes
                    .iter()
                    .map(|o| o.id.clone())
                    .filter(|id| *id != chosen)
                    .collect();
                if samples_per_instance > alternatives.len() {
                    tally.warnings.push(format!(
                        "instance {}: samples-per-instance clamped to {}",
                        instance.instance_id,
                        alternatives.len()
                    ));
                }
                let draws = samples_per_instance.min(alternatives.len());
                let mut rng = instance_rng(seed, &instance.instance_id);
                alternatives.shuffle(&mut rng);
                for alt in alternatives.into_iter().take(draws) {
                    match dominates(&instance.profile, &alt, &chosen, axiom)? {
                        Some(true) => tally.witnesses.push(Witness {
                            instance_id: instance.instance_id.clone(),
                            stakeholders: strict_supporters(&instance.profile, &alt, &chosen)?,
                            outcomes: (alt, chosen.clone()),
                        }),
                        Some(false) => tally.satisfied += 1,
                        None => tally.skipped += 1,
                    }
                }
            }
            Strategy::NoInputBaseline => {
                let with = system.evaluate(instance, Some(&instance.profile), seed)?;
                let baseline = system.evaluate(instance, None, seed)?;
                match dominates(&instance.profile, &baseline, &with, axiom)? {
                    Some(true) => tally.witnesses.push(Witness {
                        instance_id: instance.instance_id.clone(),
                        stakeholders: strict_supporters(&instance.profile, &baseline, &with)?,
                        outcomes: (baseline, with),
                    }),
                    Some(false) => tally.satisfied += 1,
                    None => tally.skipped += 1,
                }
            }
        }
    }
    Ok(AxiomScore::finish(axiom, tally))
}

fn anonymity_check(
    system: &dyn ScfAdapter,
    instance: &Instance,
    permutation: &[usize],
    base: &str,
    seed: u64,
    tally: &mut Tally,
) -> Result<()> {
    let permuted = permute(&instance.profile, permutation)?;
    let outcome = system.evaluate(instance, Some(&permuted), seed)?;
    if outcome == base {
        tally.satisfied += 1;
    } else {
        tally.witnesses.push(Witness {
            instance_id: instance.instance_id.clone(),
            stakeholders: permutation.iter().map(|p| p.to_string()).collect(),
            outcomes: (outcome, base.to_string()),
        });
    }
    Ok(())
}

/// Checks outcome invariance under seeded random permutations of the
/// profile (weights move together with ballots).
pub fn anonymity_score(
    system: &dyn ScfAdapter,
    suite: &AuditSuite,
    permutations_per_instance: usize,
    seed: u64,
) -> Result<AxiomScore> {
    if permutations_per_instance == 0 {
        return Err(Error::validation("permutations-per-instance must be positive"));
    }
    let mut tally = Tally::default();
    for instance in &suite.instances {
        let base = system.evaluate(instance, Some(&instance.profile), seed)?;
        let n = instance.profile.len();
        let mut rng = instance_rng(seed, &instance.instance_id);
        for _ in 0..permutations_per_instance {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            anonymity_check(system, instance, &perm, &base, seed, &mut tally)?;
        }
    }
    Ok(AxiomScore::finish(Axiom::Anonymity, tally))
}

/// Anonymity over all n! permutations of every instance. Guarded to
/// rosters of at most 7 stakeholders.
pub fn anonymity_score_exhaustive(system: &dyn ScfAdapter, suite: &AuditSuite) -> Result<AxiomScore> {
    let mut tally = Tally::default();
    for instance in &suite.instances {
        let n = instance.profile.len();
        if n > 7 {
            return Err(Error::validation(format!(
                "instance {}: exhaustive anonymity limited to 7 stakeholders, got {n}",
                instance.instance_id
            )));
        }
        let base = system.evaluate(instance, Some(&instance.profile), 0)?;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            anonymity_check(system, instance, &perm, &base, 0, &mut tally)?;
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    Ok(AxiomScore::finish(Axiom::Anonymity, tally))
}

/// Lexicographic successor in place; false once the last permutation is reached.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Runs every requested axiom score and bundles them into a report that is
/// bit-identical across repeated runs with the same inputs.
pub fn run_audit(
    system: &dyn ScfAdapter,
    suite: &AuditSuite,
    config: &AuditConfig,
) -> Result<AuditReport> {
    if config.axioms.is_empty() {
        return Err(Error::validation("no axioms requested"));
    }
    let mut seen = Vec::new();
    for axiom in &config.axioms {
        if seen.contains(axiom) {
            return Err(Error::validation(format!(
                "axiom {} requested twice",
                axiom.name()
            )));
        }
        seen.push(*axiom);
    }
    let mut scores = Vec::new();
    for axiom in &config.axioms {
        let score = match axiom {
            Axiom::Participation => participation_score(system, suite, config.seed)?,
            Axiom::Anonymity => {
                anonymity_score(system, suite, config.permutations_per_instance, config.seed)?
            }
            dominance => dominance_violations(
                system,
                suite,
                *dominance,
                config.strategy,
                config.samples_per_instance,
                config.seed,
            )?,
        };
        scores.push(score);
    }
    Ok(AuditReport {
        suite_id: suite.suite_id.clone(),
        system: system.label().to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        scores,
    })
}
