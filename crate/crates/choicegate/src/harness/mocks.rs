//! Mock social choice functions with analytically known axiom behavior,
//! used to validate the audit harness and as fixtures in tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::audit::ScfAdapter;
use crate::error::{Error, Result};
use crate::prefs::{Ballot, Instance, PreferenceProfile};

/// Declarative mock description, usable from config files and the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MockSpec {
    Dictatorial {
        #[serde(rename = "dictator-position")]
        dictator_position: usize,
    },
    Ignoring {
        seed: u64,
    },
    Utilitarian,
    WeightedUtilitarian,
    Random {
        seed: u64,
    },
}

impl MockSpec {
    pub fn parse(name: &str, seed: u64) -> Result<MockSpec> {
        Ok(match name {
            "dictatorial" => MockSpec::Dictatorial { dictator_position: 0 },
            "ignoring" => MockSpec::Ignoring { seed },
            "utilitarian" => MockSpec::Utilitarian,
            "weighted-utilitarian" => MockSpec::WeightedUtilitarian,
            "random" => MockSpec::Random { seed },
            other => return Err(Error::validation(format!("unknown mock kind: {other}"))),
        })
    }
}

/// Builds the adapter described by a spec.
pub fn make_mock(spec: &MockSpec) -> Box<dyn ScfAdapter> {
    match spec {
        MockSpec::Dictatorial { dictator_position } => Box::new(DictatorialMock::new(*dictator_position)),
        MockSpec::Ignoring { seed } => Box::new(IgnoringMock::new(*seed)),
        MockSpec::Utilitarian => Box::new(UtilitarianMock::new()),
        MockSpec::WeightedUtilitarian => Box::new(UtilitarianMock::weighted()),
        MockSpec::Random { seed } => Box::new(RandomMock::new(*seed)),
    }
}

fn fnv1a(data: &[u8], seed: u64) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325 ^ seed.wrapping_mul(0x9e3779b97f4a7c15);
    for b in data {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn cardinal_utility(ballot: &Ballot, outcome: &str) -> Result<f64> {
    match ballot {
        Ballot::Cardinal { utilities } => Ok(utilities.get(outcome).copied().unwrap_or(0.0)),
        other => Err(Error::validation(format!(
            "utility-based mock requires cardinal ballots, got {}",
            other.kind_name()
        ))),
    }
}

fn argmax_outcome<F: Fn(&str) -> Result<f64>>(instance: &Instance, score: F) -> Result<String> {
    let mut best: Option<(&str, f64)> = None;
    for outcome in &instance.outcomes {
        let s = score(&outcome.id)?;
        best = match best {
            None => Some((&outcome.id, s)),
            Some((bc, bs)) if s > bs || (s == bs && outcome.id.as_str() < bc) => {
                Some((&outcome.id, s))
            }
            keep => keep,
        };
    }
    best.map(|(id, _)| id.to_string())
        .ok_or_else(|| Error::mechanism("instance has no outcomes"))
}

/// Always returns the dictator's most preferred outcome, ignoring everyone
/// else. Dictator is identified by roster position.
pub struct DictatorialMock {
    dictator_position: usize,
}

impl DictatorialMock {
    pub fn new(dictator_position: usize) -> Self {
        DictatorialMock { dictator_position }
    }
}

impl ScfAdapter for DictatorialMock {
    fn label(&self) -> &str {
        "dictatorial"
    }

    fn evaluate(
        &self,
        instance: &Instance,
        profile: Option<&PreferenceProfile>,
        _seed: u64,
    ) -> Result<String> {
        let profile = profile
            .ok_or_else(|| Error::validation("dictatorial mock requires a profile"))?;
        let dictator = profile
            .stakeholders
            .get(self.dictator_position)
            .ok_or_else(|| {
                Error::validation(format!(
                    "dictator position {} outside roster of {}",
                    self.dictator_position,
                    profile.len()
                ))
            })?;
        let ballot = profile.ballot(dictator)?;
        argmax_outcome(instance, |o| cardinal_utility(ballot, o))
    }
}

/// Ignores the profile entirely: a seeded hash of the instance id picks
/// the outcome. The extreme "not designed to be an SCF" baseline.
pub struct IgnoringMock {
    seed: u64,
}

impl IgnoringMock {
    pub fn new(seed: u64) -> Self {
        IgnoringMock { seed }
    }
}

impl ScfAdapter for IgnoringMock {
    fn label(&self) -> &str {
        "ignoring"
    }

    fn supports_empty_profile(&self) -> bool {
        true
    }

    fn evaluate(
        &self,
        instance: &Instance,
        _profile: Option<&PreferenceProfile>,
        seed: u64,
    ) -> Result<String> {
        if instance.outcomes.is_empty() {
            return Err(Error::mechanism("instance has no outcomes"));
        }
        let h = fnv1a(instance.instance_id.as_bytes(), self.seed ^ seed);
        let idx = (h % instance.outcomes.len() as u64) as usize;
        Ok(instance.outcomes[idx].id.clone())
    }
}

/// Maximizes the (optionally weight-scaled) sum of cardinal utilities.
pub struct UtilitarianMock {
    use_weights: bool,
}

impl UtilitarianMock {
    pub fn new() -> Self {
        UtilitarianMock { use_weights: false }
    }

    pub fn weighted() -> Self {
        UtilitarianMock { use_weights: true }
    }
}

impl Default for UtilitarianMock {
    fn default() -> Self {
        UtilitarianMock::new()
    }
}

impl ScfAdapter for UtilitarianMock {
    fn label(&self) -> &str {
        if self.use_weights {
            "weighted-utilitarian"
        } else {
            "utilitarian"
        }
    }

    fn evaluate(
        &self,
        instance: &Instance,
        profile: Option<&PreferenceProfile>,
        _seed: u64,
    ) -> Result<String> {
        let profile =
            profile.ok_or_else(|| Error::validation("utilitarian mock requires a profile"))?;
        argmax_outcome(instance, |o| {
            // summing in sorted order keeps the total independent of ballot
            // positions despite float non-associativity, so permuting the
            // profile can never flip an exact tie
            let mut terms = Vec::with_capacity(profile.len());
            for s in &profile.stakeholders {
                let u = cardinal_utility(profile.ballot(s)?, o)?;
                terms.push(if self.use_weights { profile.weight(s) * u } else { u });
            }
            terms.sort_by(f64::total_cmp);
            Ok(terms.iter().sum())
        })
    }
}

/// Seeded uniform draw keyed on a canonical digest of the profile, so any
/// ballot change can change the outcome while runs stay reproducible.
pub struct RandomMock {
    seed: u64,
}

impl RandomMock {
    pub fn new(seed: u64) -> Self {
        RandomMock { seed }
    }
}

impl ScfAdapter for RandomMock {
    fn label(&self) -> &str {
        "random"
    }

    fn supports_empty_profile(&self) -> bool {
        true
    }

    fn evaluate(
        &self,
        instance: &Instance,
        profile: Option<&PreferenceProfile>,
        seed: u64,
    ) -> Result<String> {
        if instance.outcomes.is_empty() {
            return Err(Error::mechanism("instance has no outcomes"));
        }
        let digest = match profile {
            Some(p) => {
                let canonical = serde_json::to_value(p)?;
                fnv1a(canonical.to_string().as_bytes(), 0)
            }
            None => 0,
        };
        let mix = fnv1a(instance.instance_id.as_bytes(), self.seed ^ seed ^ digest);
        let mut rng = ChaCha8Rng::seed_from_u64(mix);
        let idx = rng.gen_range(0..instance.outcomes.len());
        Ok(instance.outcomes[idx].id.clone())
    }
}
