//! Scenario runner: binds pipeline stages to mechanisms and executes them
//! in order, writing one canonical report per stage plus a manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::audit::{run_audit, AuditConfig};
use crate::epistemic::{aggregate_labels, estimate_reliabilities, mle_labels, AggregationMode, AnnotationSet};
use crate::error::{Error, Result};
use crate::harness::mocks::{make_mock, MockSpec};
use crate::harness::report::canonical_json;
use crate::harness::suite::load_suite;
use crate::portioning::{equal_split_portion, mean_portion, portion_with_exclusion};
use crate::prefs::{Instance, PreferenceProfile};
use crate::temporal::{group_proportionality_audit, individual_neglect_audit, run_credit_sequence, GroupSpec};
use crate::voting::{approval_committee, median_select, single_winner, veto_core, CommitteeRule, SingleWinnerRule};

/// A pipeline stage bound to a mechanism with inline parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StageSpec {
    Median {
        stage: String,
        #[serde(rename = "metric-id")]
        metric_id: String,
        reports: Vec<f64>,
        weights: Vec<f64>,
    },
    SingleWinner {
        stage: String,
        rule: SingleWinnerRule,
        profile: PreferenceProfile,
    },
    Committee {
        stage: String,
        rule: CommitteeRule,
        k: usize,
        candidates: Option<Vec<String>>,
        profile: PreferenceProfile,
    },
    VetoCore {
        stage: String,
        profile: PreferenceProfile,
    },
    Portion {
        stage: String,
        mode: PortionMode,
        types: Vec<String>,
        profile: PreferenceProfile,
        #[serde(rename = "veto-profile")]
        veto_profile: Option<PreferenceProfile>,
        threshold: Option<f64>,
    },
    Labels {
        stage: String,
        mode: LabelMode,
        reports: Vec<(String, String, String)>,
        weights: Option<BTreeMap<String, f64>>,
    },
    Temporal {
        stage: String,
        roster: Vec<String>,
        rounds: Vec<Instance>,
        groups: Vec<GroupSpec>,
        slack: f64,
        window: usize,
    },
    Audit {
        stage: String,
        suite: PathBuf,
        mock: MockSpec,
        config: AuditConfig,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PortionMode {
    Mean,
    EqualSplit,
    Filtered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelMode {
    Plurality,
    Weighted,
    Soft,
    Estimate,
}

impl StageSpec {
    pub fn stage_name(&self) -> &str {
        match self {
            StageSpec::Median { stage, .. }
            | StageSpec::SingleWinner { stage, .. }
            | StageSpec::Committee { stage, .. }
            | StageSpec::VetoCore { stage, .. }
            | StageSpec::Portion { stage, .. }
            | StageSpec::Labels { stage, .. }
            | StageSpec::Temporal { stage, .. }
            | StageSpec::Audit { stage, .. } => stage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub stages: Vec<StageSpec>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<ScenarioConfig> {
        let text = fs::read_to_string(path)?;
        let deserializer = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(deserializer).map_err(|e| {
            Error::validation(format!("scenario schema error at {}: {}", e.path(), e.inner()))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub file: String,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioManifest {
    pub scenario: String,
    pub completed: Vec<StageRecord>,
    pub failed: Option<String>,
}

fn digest_hex(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn run_stage(spec: &StageSpec) -> Result<serde_json::Value> {
    let value = match spec {
        StageSpec::Median {
            metric_id,
            reports,
            weights,
            ..
        } => serde_json::to_value(median_select(metric_id, reports, weights)?)?,
        StageSpec::SingleWinner { rule, profile, .. } => {
            serde_json::to_value(single_winner(profile, *rule)?)?
        }
        StageSpec::Committee {
            rule,
            k,
            candidates,
            profile,
            ..
        } => serde_json::to_value(approval_committee(profile, candidates.as_deref(), *k, *rule)?)?,
        StageSpec::VetoCore { profile, .. } => serde_json::to_value(veto_core(profile)?)?,
        StageSpec::Portion {
            mode,
            types,
            profile,
            veto_profile,
            threshold,
            ..
        } => {
            let dist = match mode {
                PortionMode::Mean => mean_portion(profile, types)?,
                PortionMode::EqualSplit => equal_split_portion(profile, types)?,
                PortionMode::Filtered => {
                    let veto = veto_profile.as_ref().ok_or_else(|| {
                        Error::validation("filtered portioning requires veto-profile")
                    })?;
                    portion_with_exclusion(profile, veto, types, threshold.unwrap_or(0.5))?
                }
            };
            serde_json::to_value(dist)?
        }
        StageSpec::Labels {
            mode,
            reports,
            weights,
            ..
        } => {
            let annotations = AnnotationSet::from_reports(reports.clone())?;
            match mode {
                LabelMode::Plurality => serde_json::to_value(aggregate_labels(
                    &annotations,
                    AggregationMode::Plurality,
                    None,
                )?)?,
                LabelMode::Weighted => serde_json::to_value(aggregate_labels(
                    &annotations,
                    AggregationMode::Weighted,
                    weights.as_ref(),
                )?)?,
                LabelMode::Soft => serde_json::to_value(aggregate_labels(
                    &annotations,
                    AggregationMode::Soft,
                    weights.as_ref(),
                )?)?,
                LabelMode::Estimate => {
                    let est = estimate_reliabilities(&annotations, 100, 1e-8)?;
                    let labels = mle_labels(&annotations, &est)?;
                    serde_json::json!({ "reliabilities": est, "labels": labels })
                }
            }
        }
        StageSpec::Temporal {
            roster,
            rounds,
            groups,
            slack,
            window,
            ..
        } => {
            let (log, trace) = run_credit_sequence(roster, rounds)?;
            let group_audit = group_proportionality_audit(&log, groups, *slack)?;
            let neglect = individual_neglect_audit(&log, *window)?;
            serde_json::json!({
                "log": log,
                "weight-trace": trace,
                "group-audit": group_audit,
                "neglect-audit": neglect,
            })
        }
        StageSpec::Audit {
            suite,
            mock,
            config,
            ..
        } => {
            let suite = load_suite(suite)?;
            let system = make_mock(mock);
            serde_json::to_value(run_audit(system.as_ref(), &suite, config)?)?
        }
    };
    Ok(value)
}

/// Executes the scenario's stages in order, writing `NN-<stage>.json` per
/// stage and a `manifest.json`. On a stage failure the manifest records
/// the completed stages and the error is propagated.
pub fn run_scenario(config: &ScenarioConfig, out_dir: &Path) -> Result<ScenarioManifest> {
    if config.stages.is_empty() {
        return Err(Error::validation("empty scenario"));
    }
    fs::create_dir_all(out_dir)?;
    let mut manifest = ScenarioManifest {
        scenario: config.scenario.clone(),
        completed: Vec::new(),
        failed: None,
    };
    for (idx, stage) in config.stages.iter().enumerate() {
        match run_stage(stage) {
            Ok(value) => {
                let file = format!("{idx:02}-{}.json", stage.stage_name());
                let rendered = canonical_json(&value)?;
                fs::write(out_dir.join(&file), &rendered)?;
                manifest.completed.push(StageRecord {
                    stage: stage.stage_name().to_string(),
                    file,
                    digest: digest_hex(rendered.as_bytes()),
                });
            }
            Err(err) => {
                manifest.failed = Some(format!("{}: {err}", stage.stage_name()));
                fs::write(out_dir.join("manifest.json"), canonical_json(&manifest)?)?;
                return Err(err);
            }
        }
    }
    fs::write(out_dir.join("manifest.json"), canonical_json(&manifest)?)?;
    Ok(manifest)
}
